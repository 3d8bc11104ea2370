import * as fs from "node:fs";
import * as path from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { exportCorpus, serializeCorpus } from "../src/corpus.js";
import { parseSemcorFile, pennToWordNetPos } from "../src/semcor.js";
import { validateCorpusLines } from "../src/schema.js";

const CORPUS_DIR = fileURLToPath(new URL("./fixtures/mini-semcor", import.meta.url));

describe("pennToWordNetPos", () => {
  it("maps Penn tags onto the four WordNet parts of speech", () => {
    expect(pennToWordNetPos("NN")).toBe("n");
    expect(pennToWordNetPos("NNS")).toBe("n");
    expect(pennToWordNetPos("VBD")).toBe("v");
    expect(pennToWordNetPos("JJ")).toBe("a");
    expect(pennToWordNetPos("RB")).toBe("r");
    expect(pennToWordNetPos("DT")).toBeNull();
    expect(pennToWordNetPos("CD")).toBeNull();
  });
});

describe("parseSemcorFile", () => {
  const parsed = parseSemcorFile(fs.readFileSync(path.join(CORPUS_DIR, "br-x01"), "utf-8"));

  it("keeps tokens and senses aligned per sentence", () => {
    expect(parsed.sentences).toHaveLength(3);
    for (const sentence of parsed.sentences) {
      expect(sentence.senses).toHaveLength(sentence.tokens.length);
    }
  });

  it("builds sense keys from lemma, Penn pos and wnsn", () => {
    const [first] = parsed.sentences;
    expect(first.tokens).toEqual(["The", "bank", "ran", "fast", "."]);
    expect(first.senses).toEqual([null, "bank.n.01", "run.v.01", "fast.r.01", null]);
  });

  it("joins multi-word forms with underscores", () => {
    const second = parsed.sentences[1];
    expect(second.tokens).toEqual(["hot", "vice_president", "bogus", "of", "."]);
    expect(second.senses[1]).toBe("vice_president.n.01");
  });

  it("counts an unmappable annotation instead of dropping the token", () => {
    // wnsn=0 marks a sense missing from the database release
    expect(parsed.malformedAnnotations).toBe(1);
    expect(parsed.sentences[1].tokens).toContain("bogus");
    expect(parsed.sentences[1].senses[2]).toBeNull();
  });

  it("leaves an unannotated sentence all null", () => {
    const third = parsed.sentences[2];
    expect(third.tokens).toEqual(["the", "thing", "."]);
    expect(third.senses).toEqual([null, null, null]);
  });

  it("takes the first of alternative sense numbers and skips ot forms quietly", () => {
    const other = parseSemcorFile(
      fs.readFileSync(path.join(CORPUS_DIR, "br-x02"), "utf-8"),
    );
    const [sentence] = other.sentences;
    expect(sentence.senses[0]).toBe("bank.n.02"); // wnsn=2;1
    expect(sentence.tokens[3]).toBe("157"); // ot=notag: kept, unlabelled, no warning
    expect(sentence.senses[3]).toBeNull();
    expect(other.malformedAnnotations).toBe(0);
  });
});

describe("exportCorpus", () => {
  it("writes one JSON line per sentence with aligned arrays", () => {
    const result = exportCorpus([CORPUS_DIR]);
    expect(result.lines).toHaveLength(4);
    for (const line of result.lines) {
      const parsed = JSON.parse(line) as { tokens: string[]; senses: (string | null)[] };
      expect(parsed.senses).toHaveLength(parsed.tokens.length);
    }
    expect(validateCorpusLines(serializeCorpus(result.lines))).toEqual([]);
  });

  it("reports counts matching an independent recount, plus the labelled fraction", () => {
    const result = exportCorpus([CORPUS_DIR]);
    let tokens = 0;
    let labelled = 0;
    for (const line of result.lines) {
      const parsed = JSON.parse(line) as { tokens: string[]; senses: (string | null)[] };
      tokens += parsed.tokens.length;
      labelled += parsed.senses.filter((s) => s !== null).length;
    }
    expect(result.counts).toEqual({ sentences: 4, tokens, labelledTokens: labelled });
    expect(result.labelledFraction).toBeCloseTo(labelled / tokens, 12);
    expect(result.malformedAnnotations).toBe(1);
  });

  it("is deterministic across runs and accepts single files", () => {
    const twice = [exportCorpus([CORPUS_DIR]), exportCorpus([CORPUS_DIR])];
    expect(serializeCorpus(twice[0].lines)).toBe(serializeCorpus(twice[1].lines));
    const single = exportCorpus([path.join(CORPUS_DIR, "br-x02")]);
    expect(single.counts.sentences).toBe(1);
  });

  it("names a corpus path that does not exist", () => {
    expect(() => exportCorpus([path.join(CORPUS_DIR, "no-such-file")])).toThrow(/does not exist/);
  });
});
