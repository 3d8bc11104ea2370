/** Turns parsed concordance files into labelled JSON-lines plus counts. */
import { parseSemcorPaths } from "./semcor.js";

export type CorpusCounts = {
  sentences: number;
  tokens: number;
  labelledTokens: number;
};

export type CorpusExport = {
  lines: string[];
  counts: CorpusCounts;
  labelledFraction: number;
  malformedAnnotations: number;
};

export function exportCorpus(paths: string[]): CorpusExport {
  const parsed = parseSemcorPaths(paths);
  const lines: string[] = [];
  const counts: CorpusCounts = { sentences: 0, tokens: 0, labelledTokens: 0 };
  for (const sentence of parsed.sentences) {
    lines.push(JSON.stringify({ tokens: sentence.tokens, senses: sentence.senses }));
    counts.sentences += 1;
    counts.tokens += sentence.tokens.length;
    counts.labelledTokens += sentence.senses.filter((s) => s !== null).length;
  }
  return {
    lines,
    counts,
    labelledFraction: counts.tokens > 0 ? counts.labelledTokens / counts.tokens : 0,
    malformedAnnotations: parsed.malformedAnnotations,
  };
}

export function serializeCorpus(lines: string[]): string {
  return lines.length > 0 ? `${lines.join("\n")}\n` : "";
}
