/**
 * Reader for SemCor-style SGML concordance files.
 *
 * Files are streams of <s> sentences holding <wf> word forms and <punc>
 * punctuation. An annotated word form looks like
 *
 *   <wf cmd=done pos=NN lemma=bank wnsn=2 lexsn=1:17:00::>bank</wf>
 *
 * and maps to the sense key `bank.n.02` (wnsn is the WordNet sense number;
 * the pos letter comes from the Penn tag). Tokens always survive into the
 * output; an annotation that cannot be turned into a key is dropped and
 * counted so callers can surface a warning total.
 */
import * as fs from "node:fs";
import * as path from "node:path";

import { senseKey, type Pos } from "./wndb.js";

export type LabelledSentence = { tokens: string[]; senses: (string | null)[] };

export type CorpusParse = {
  sentences: LabelledSentence[];
  malformedAnnotations: number;
};

const TAG_RE = /<wf([^>]*)>([^<]*)<\/wf>|<punc>([^<]*)<\/punc>|<(\/?)s(?:\s[^>]*)?>/g;

/** SGML attributes in these files are unquoted `key=value` pairs. */
function parseAttrs(raw: string): Record<string, string> {
  const attrs: Record<string, string> = {};
  for (const match of raw.matchAll(/([a-zA-Z_]+)=("[^"]*"|\S+)/g)) {
    const value = match[2];
    attrs[match[1]] = value.startsWith('"') ? value.slice(1, -1) : value;
  }
  return attrs;
}

export function pennToWordNetPos(tag: string): Pos | null {
  if (tag.startsWith("NN")) return "n";
  if (tag.startsWith("VB")) return "v";
  if (tag.startsWith("JJ")) return "a";
  if (tag === "RB" || tag === "RBR" || tag === "RBS" || tag === "WRB") return "r";
  return null;
}

function annotationFor(attrs: Record<string, string>): { sense: string | null; malformed: boolean } {
  if (attrs["cmd"] !== "done") return { sense: null, malformed: false };
  // `ot` marks forms the annotators deliberately left outside WordNet.
  if ("ot" in attrs) return { sense: null, malformed: false };
  const lemma = attrs["lemma"];
  const pos = attrs["pos"] ? pennToWordNetPos(attrs["pos"]) : null;
  // wnsn may list alternatives ("2;1"); the first is the chosen sense.
  const wnsn = (attrs["wnsn"] ?? "").split(";")[0];
  const number = /^\d+$/.test(wnsn) ? parseInt(wnsn, 10) : 0;
  if (!lemma || pos === null || number <= 0) return { sense: null, malformed: true };
  return { sense: senseKey(lemma.toLowerCase(), pos, number), malformed: false };
}

export function parseSemcorFile(text: string): CorpusParse {
  const sentences: LabelledSentence[] = [];
  let malformed = 0;
  let current: LabelledSentence | null = null;
  for (const match of text.matchAll(TAG_RE)) {
    if (match[4] !== undefined) {
      if (match[4] === "/") {
        if (current && current.tokens.length > 0) sentences.push(current);
        current = null;
      } else {
        current = { tokens: [], senses: [] };
      }
      continue;
    }
    if (!current) continue; // material outside any sentence
    let token: string;
    let sense: string | null = null;
    if (match[3] !== undefined) {
      token = match[3];
    } else {
      token = match[2];
      const annotation = annotationFor(parseAttrs(match[1]));
      sense = annotation.sense;
      if (annotation.malformed) malformed += 1;
    }
    // Multi-word forms keep one slot: "vice president" -> "vice_president".
    token = token.trim().replace(/\s+/g, "_");
    if (!token) continue;
    current.tokens.push(token);
    current.senses.push(sense);
  }
  if (current && current.tokens.length > 0) sentences.push(current);
  return { sentences, malformedAnnotations: malformed };
}

/** A corpus path may be one file or a directory tree of concordance files. */
export function listCorpusFiles(root: string): string[] {
  if (!fs.existsSync(root)) {
    throw new Error(`corpus path does not exist: ${root}`);
  }
  if (fs.statSync(root).isFile()) return [root];
  const files: string[] = [];
  const walk = (dir: string) => {
    for (const entry of fs.readdirSync(dir, { withFileTypes: true }).sort((a, b) => a.name.localeCompare(b.name))) {
      if (entry.name.startsWith(".")) continue;
      const full = path.join(dir, entry.name);
      if (entry.isDirectory()) walk(full);
      else files.push(full);
    }
  };
  walk(root);
  return files;
}

export function parseSemcorPaths(paths: string[]): CorpusParse {
  const sentences: LabelledSentence[] = [];
  let malformed = 0;
  for (const root of paths) {
    for (const file of listCorpusFiles(root)) {
      const parsed = parseSemcorFile(fs.readFileSync(file, "utf-8"));
      sentences.push(...parsed.sentences);
      malformed += parsed.malformedAnnotations;
    }
  }
  return { sentences, malformedAnnotations: malformed };
}
