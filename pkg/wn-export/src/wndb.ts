/**
 * Reader for WordNet-style database directories (the WNDB plain-text layout).
 *
 * A database directory holds one index/data file pair per part of speech
 * (`index.noun` + `data.noun`, ...) plus morphological exception lists
 * (`noun.exc`, ...). Sense numbering follows the index files: the i-th synset
 * offset on a lemma's index line is sense i, so the key of that sense is
 * `lemma.pos.NN` ("bank.n.01"). Adjective satellites are stored in the
 * adjective files and keyed under "a" like every other adjective.
 */
import * as fs from "node:fs";
import * as path from "node:path";

export type Pos = "n" | "v" | "a" | "r";

export const POS_ORDER: Pos[] = ["n", "v", "a", "r"];

const POS_FILES: Record<Pos, { index: string; data: string; exc: string }> = {
  n: { index: "index.noun", data: "data.noun", exc: "noun.exc" },
  v: { index: "index.verb", data: "data.verb", exc: "verb.exc" },
  a: { index: "index.adj", data: "data.adj", exc: "adj.exc" },
  r: { index: "index.adv", data: "data.adv", exc: "adv.exc" },
};

export type AntonymPointer = {
  /** 1-based word number in the source synset; 0 marks a whole-synset pointer. */
  sourceWord: number;
  targetOffset: string;
  targetPos: Pos;
  /** 1-based word number in the target synset; 0 means the whole synset. */
  targetWord: number;
};

export type Synset = {
  offset: string;
  /** Part of speech of the file the synset came from (satellites fold into "a"). */
  pos: Pos;
  /** Raw synset type from the data file: n, v, a, r or s. */
  ssType: string;
  words: string[];
  definitions: string[];
  examples: string[];
  antonyms: AntonymPointer[];
};

export type WordNetDb = {
  dir: string;
  /** `${pos}:${offset}` -> synset. */
  synsets: Map<string, Synset>;
  /** lemma -> synset offsets per part of speech, in sense-number order. */
  senseOffsets: Map<string, Partial<Record<Pos, string[]>>>;
  /** inflected form -> base form, merged across the per-pos exception files. */
  lemmaExceptions: Record<string, string>;
};

/** Drop the licence header (lines starting with whitespace) and blank lines. */
function contentLines(text: string): string[] {
  return text.split(/\r?\n/).filter((line) => line.length > 0 && !/^\s/.test(line));
}

/** Adjective words may carry a syntactic marker suffix: "baking(a)" -> "baking". */
function stripAdjMarker(word: string): string {
  return word.replace(/\((?:a|p|ip)\)$/, "");
}

/**
 * Split a gloss into definitions and quoted example sentences. The two are
 * separated by "; "; examples are the double-quoted parts. A quoted example
 * may itself contain "; ", so fragments with an unbalanced quote are rejoined
 * before classification.
 */
export function splitGloss(gloss: string): { definitions: string[]; examples: string[] } {
  const definitions: string[] = [];
  const examples: string[] = [];
  if (!gloss) return { definitions, examples };
  const parts: string[] = [];
  for (const piece of gloss.split("; ")) {
    const last = parts[parts.length - 1];
    const open = last !== undefined && (last.split('"').length - 1) % 2 === 1;
    if (open) parts[parts.length - 1] = `${last}; ${piece}`;
    else parts.push(piece);
  }
  for (const part of parts) {
    const text = part.trim();
    if (!text) continue;
    if (text.startsWith('"')) {
      const body = text.slice(1);
      const close = body.lastIndexOf('"');
      examples.push(close >= 0 ? body.slice(0, close) : body);
    } else {
      definitions.push(text);
    }
  }
  return { definitions, examples };
}

/**
 * Parse one data-file line:
 *
 *   offset lex_filenum ss_type w_cnt (word lex_id)+ p_cnt (ptr)* [frames] | gloss
 *
 * `w_cnt` is two-digit hex; each pointer is `symbol offset pos source/target`
 * with source/target packed as two hex bytes (1-based word numbers, 00 for
 * whole-synset pointers). Only antonym pointers ("!") are kept; verb frame
 * data after the pointers is ignored.
 */
export function parseDataLine(line: string, filePos: Pos): Synset {
  const bar = line.indexOf(" | ");
  const head = (bar >= 0 ? line.slice(0, bar) : line).trim();
  const gloss = bar >= 0 ? line.slice(bar + 3).trim() : "";
  const fields = head.split(/\s+/);
  const offset = fields[0];
  const ssType = fields[2];
  const wordCount = parseInt(fields[3], 16);
  const words: string[] = [];
  for (let i = 0; i < wordCount; i++) {
    words.push(stripAdjMarker(fields[4 + 2 * i]).toLowerCase());
  }
  const base = 4 + 2 * wordCount;
  const pointerCount = parseInt(fields[base], 10);
  const antonyms: AntonymPointer[] = [];
  for (let i = 0; i < pointerCount; i++) {
    const [symbol, targetOffset, pos, srcTgt] = fields.slice(base + 1 + 4 * i, base + 5 + 4 * i);
    if (symbol !== "!") continue;
    antonyms.push({
      sourceWord: parseInt(srcTgt.slice(0, 2), 16),
      targetOffset,
      targetPos: pos === "s" ? "a" : (pos as Pos),
      targetWord: parseInt(srcTgt.slice(2), 16),
    });
  }
  const { definitions, examples } = splitGloss(gloss);
  return { offset, pos: filePos, ssType, words, definitions, examples, antonyms };
}

/**
 * Parse one index-file line:
 *
 *   lemma pos synset_cnt p_cnt (ptr_symbol)* sense_cnt tagsense_cnt offset+
 *
 * The offsets are the last `synset_cnt` fields and are already in
 * sense-number order.
 */
export function parseIndexLine(line: string): { lemma: string; offsets: string[] } {
  const fields = line.trim().split(/\s+/);
  const synsetCount = parseInt(fields[2], 10);
  return { lemma: fields[0].toLowerCase(), offsets: fields.slice(fields.length - synsetCount) };
}

/**
 * Load a WNDB directory into memory. At minimum the noun pair must exist;
 * any of the other part-of-speech pairs and exception files are picked up
 * when present. Exception entries keep the first base form listed; a form
 * already mapped by an earlier file is left alone.
 */
export function openDb(dir: string): WordNetDb {
  for (const name of ["index.noun", "data.noun"]) {
    if (!fs.existsSync(path.join(dir, name))) {
      throw new Error(
        `WordNet database not found at ${dir}: missing ${name} ` +
          "(point --db at a WNDB directory such as WordNet-3.0/dict)",
      );
    }
  }
  const synsets = new Map<string, Synset>();
  const senseOffsets = new Map<string, Partial<Record<Pos, string[]>>>();
  const lemmaExceptions: Record<string, string> = {};
  for (const pos of POS_ORDER) {
    const files = POS_FILES[pos];
    const dataPath = path.join(dir, files.data);
    const indexPath = path.join(dir, files.index);
    if (fs.existsSync(dataPath) && fs.existsSync(indexPath)) {
      for (const line of contentLines(fs.readFileSync(dataPath, "utf-8"))) {
        const synset = parseDataLine(line, pos);
        synsets.set(`${pos}:${synset.offset}`, synset);
      }
      for (const line of contentLines(fs.readFileSync(indexPath, "utf-8"))) {
        const { lemma, offsets } = parseIndexLine(line);
        const perPos = senseOffsets.get(lemma) ?? {};
        perPos[pos] = offsets;
        senseOffsets.set(lemma, perPos);
      }
    }
    const excPath = path.join(dir, files.exc);
    if (fs.existsSync(excPath)) {
      for (const line of contentLines(fs.readFileSync(excPath, "utf-8"))) {
        const [form, base] = line.trim().split(/\s+/);
        if (form && base && !(form in lemmaExceptions)) {
          lemmaExceptions[form.toLowerCase()] = base.toLowerCase();
        }
      }
    }
  }
  return { dir, synsets, senseOffsets, lemmaExceptions };
}

export function senseKey(lemma: string, pos: Pos, senseNumber: number): string {
  return `${lemma}.${pos}.${String(senseNumber).padStart(2, "0")}`;
}

/** Sense number of (lemma, pos, offset), or null if the lemma's index lacks it. */
export function senseNumberOf(db: WordNetDb, lemma: string, pos: Pos, offset: string): number | null {
  const offsets = db.senseOffsets.get(lemma)?.[pos];
  const idx = offsets ? offsets.indexOf(offset) : -1;
  return idx >= 0 ? idx + 1 : null;
}

/** Sense key of a synset member word, or null if it cannot be numbered. */
export function keyForSynsetWord(db: WordNetDb, synset: Synset, word: string): string | null {
  const n = senseNumberOf(db, word, synset.pos, synset.offset);
  return n === null ? null : senseKey(word, synset.pos, n);
}
