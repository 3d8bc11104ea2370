/**
 * Builds the sense-inventory JSON consumed by the multisense toolkit.
 *
 * Each exported word lists its senses in (part-of-speech, sense-number)
 * order, carrying the synset's definitions and quoted examples plus synonym
 * and antonym edges resolved to sense keys. Words requested through the
 * vocabulary filter but absent from the database get a single dummy-sense
 * placeholder entry so downstream sense streams have no gaps.
 */
import {
  POS_ORDER,
  keyForSynsetWord,
  senseKey,
  type Synset,
  type WordNetDb,
} from "./wndb.js";

export const DUMMY_TAG = "dummySense";

export type SenseEntry = {
  key: string;
  definitions: string[];
  examples: string[];
  synonyms: string[];
  antonyms: string[];
};

export type InventoryDoc = {
  lemma_exceptions: Record<string, string>;
  words: Record<string, { senses: SenseEntry[] }>;
};

export type InventoryCounts = {
  words: number;
  senses: number;
  definitions: number;
  examples: number;
};

export type InventoryExport = {
  doc: InventoryDoc;
  counts: InventoryCounts;
  /** Filter words that were absent from the database and got a placeholder. */
  placeholders: string[];
};

/** Filter entries fold to the database's lemma form: lowercase, underscores. */
function normalizeWord(word: string): string {
  return word.trim().toLowerCase().replace(/\s+/g, "_");
}

function antonymKeys(db: WordNetDb, synset: Synset, wordIndex: number): string[] {
  const keys: string[] = [];
  for (const ptr of synset.antonyms) {
    // Lexical pointers attach to one word of the synset; whole-synset
    // pointers (sourceWord 0) apply to every member.
    if (ptr.sourceWord !== 0 && ptr.sourceWord !== wordIndex + 1) continue;
    const target = db.synsets.get(`${ptr.targetPos}:${ptr.targetOffset}`);
    if (!target) continue;
    const targetWord = ptr.targetWord === 0 ? target.words[0] : target.words[ptr.targetWord - 1];
    if (!targetWord) continue;
    const key = keyForSynsetWord(db, target, targetWord);
    if (key && !keys.includes(key)) keys.push(key);
  }
  return keys;
}

function sensesFor(db: WordNetDb, word: string): SenseEntry[] {
  const perPos = db.senseOffsets.get(word);
  if (!perPos) return [];
  const entries: SenseEntry[] = [];
  for (const pos of POS_ORDER) {
    const offsets = perPos[pos];
    if (!offsets) continue;
    offsets.forEach((offset, i) => {
      const synset = db.synsets.get(`${pos}:${offset}`);
      if (!synset) return;
      const wordIndex = synset.words.indexOf(word);
      const synonyms = synset.words
        .filter((member) => member !== word)
        .map((member) => keyForSynsetWord(db, synset, member))
        .filter((key): key is string => key !== null);
      entries.push({
        key: senseKey(word, pos, i + 1),
        definitions: [...synset.definitions],
        examples: [...synset.examples],
        synonyms,
        antonyms: antonymKeys(db, synset, wordIndex),
      });
    });
  }
  return entries;
}

export function placeholderEntry(word: string): SenseEntry {
  return { key: `${word}.${DUMMY_TAG}.01`, definitions: [], examples: [], synonyms: [], antonyms: [] };
}

/**
 * Export the inventory for `vocabFilter` words (or the whole database when no
 * filter is given). Lemma exceptions are restricted to entries whose base
 * form is among the exported words, since the others could never resolve.
 */
export function exportInventory(db: WordNetDb, vocabFilter?: Iterable<string>): InventoryExport {
  const requested = vocabFilter
    ? [...new Set([...vocabFilter].map(normalizeWord).filter((w) => w.length > 0))]
    : [...db.senseOffsets.keys()];
  requested.sort();
  const words: Record<string, { senses: SenseEntry[] }> = {};
  const placeholders: string[] = [];
  const counts: InventoryCounts = { words: 0, senses: 0, definitions: 0, examples: 0 };
  for (const word of requested) {
    let senses = sensesFor(db, word);
    if (senses.length === 0) {
      senses = [placeholderEntry(word)];
      placeholders.push(word);
    }
    words[word] = { senses };
    counts.words += 1;
    counts.senses += senses.length;
    for (const sense of senses) {
      counts.definitions += sense.definitions.length;
      counts.examples += sense.examples.length;
    }
  }
  const exported = new Set(Object.keys(words));
  const lemma_exceptions: Record<string, string> = {};
  for (const form of Object.keys(db.lemmaExceptions).sort()) {
    if (exported.has(db.lemmaExceptions[form])) {
      lemma_exceptions[form] = db.lemmaExceptions[form];
    }
  }
  return { doc: { lemma_exceptions, words }, counts, placeholders };
}

export function serializeInventory(doc: InventoryDoc): string {
  return `${JSON.stringify(doc, null, 2)}\n`;
}
