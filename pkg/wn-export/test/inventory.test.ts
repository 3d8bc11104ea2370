import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { DUMMY_TAG, exportInventory, serializeInventory, type InventoryDoc } from "../src/inventory.js";
import { validateInventoryDoc } from "../src/schema.js";
import { openDb } from "../src/wndb.js";

const DB_DIR = fileURLToPath(new URL("./fixtures/mini-wndb", import.meta.url));
const db = openDb(DB_DIR);

/** Independent walk of the serialized document, not of the builder's state. */
function recount(text: string) {
  const doc = JSON.parse(text) as InventoryDoc;
  const counts = { words: 0, senses: 0, definitions: 0, examples: 0 };
  for (const entry of Object.values(doc.words)) {
    counts.words += 1;
    for (const sense of entry.senses) {
      counts.senses += 1;
      counts.definitions += sense.definitions.length;
      counts.examples += sense.examples.length;
    }
  }
  return counts;
}

describe("exportInventory", () => {
  it("gives bank two noun senses, the first being the sloping-land gloss", () => {
    const { doc } = exportInventory(db);
    const senses = doc.words["bank"].senses;
    expect(senses.map((s) => s.key)).toEqual(["bank.n.01", "bank.n.02"]);
    expect(senses[0].definitions[0]).toMatch(/^sloping land/);
    expect(senses[0].examples).toContain("they pulled the canoe up on the bank");
  });

  it("resolves synonyms and antonyms to sense keys", () => {
    const { doc } = exportInventory(db);
    expect(doc.words["bank"].senses[1].synonyms).toEqual(["coin_bank.n.01"]);
    expect(doc.words["coin_bank"].senses[0].synonyms).toEqual(["bank.n.02"]);
    expect(doc.words["bank"].senses[1].antonyms).toEqual(["debt.n.01"]);
    expect(doc.words["debt"].senses[0].antonyms).toEqual(["bank.n.02"]);
    expect(doc.words["hot"].senses[0].antonyms).toEqual(["cold.a.01"]);
    expect(doc.words["cold"].senses[0].antonyms).toEqual(["hot.a.01"]);
  });

  it("orders a word's senses noun, verb, adjective, adverb", () => {
    const { doc } = exportInventory(db, ["fast", "run"]);
    expect(doc.words["fast"].senses.map((s) => s.key)).toEqual(["fast.r.01"]);
    expect(doc.words["run"].senses.map((s) => s.key)).toEqual(["run.v.01"]);
  });

  it("gives filter words absent from the database a dummy placeholder", () => {
    const { doc, placeholders } = exportInventory(db, ["bank", "flibbertigibbet", "Vice President"]);
    expect(placeholders).toEqual(["flibbertigibbet"]);
    expect(doc.words["flibbertigibbet"].senses).toEqual([
      { key: `flibbertigibbet.${DUMMY_TAG}.01`, definitions: [], examples: [], synonyms: [], antonyms: [] },
    ]);
    // the filter folds to database lemma form
    expect(doc.words["vice_president"].senses[0].key).toBe("vice_president.n.01");
  });

  it("keeps only lemma exceptions whose base form is exported", () => {
    const full = exportInventory(db);
    expect(full.doc.lemma_exceptions).toEqual({
      banks: "bank",
      hotter: "hot",
      ran: "run",
      watched: "watch",
    });
    const filtered = exportInventory(db, ["run"]);
    expect(filtered.doc.lemma_exceptions).toEqual({ ran: "run" });
  });

  it("reports counts that match an independent recount of the output", () => {
    const result = exportInventory(db, ["bank", "hot", "nonesuch", "run"]);
    expect(recount(serializeInventory(result.doc))).toEqual(result.counts);
    const full = exportInventory(db);
    expect(recount(serializeInventory(full.doc))).toEqual(full.counts);
  });

  it("is deterministic regardless of filter order", () => {
    const a = serializeInventory(exportInventory(db, ["run", "bank", "hot"]).doc);
    const b = serializeInventory(exportInventory(db, ["hot", "run", "bank"]).doc);
    expect(a).toBe(b);
  });

  it("produces schema-valid output, and the schema rejects a foreign key", () => {
    const result = exportInventory(db, ["bank", "nonesuch"]);
    expect(validateInventoryDoc(result.doc)).toEqual([]);
    const broken = JSON.parse(serializeInventory(result.doc)) as InventoryDoc;
    broken.words["bank"].senses[0].key = "river.n.01";
    expect(validateInventoryDoc(broken).join("\n")).toMatch(/river\.n\.01.*does not belong/);
  });
});
