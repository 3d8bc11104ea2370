/**
 * Export manifest: records sources, output counts, warnings and a sha256
 * checksum per output file. Both CLI commands update the same manifest, and
 * once both outputs are recorded the cross-export invariant is checked:
 * every sense key used in the corpus export must exist in the inventory.
 */
import { createHash } from "node:crypto";
import * as fs from "node:fs";

import type { InventoryDoc } from "./inventory.js";

export type SourceInfo = { name: string; version: string; path: string };

export type ExportManifest = {
  format: "wn-export-manifest";
  version: 1;
  sources: { db?: SourceInfo; corpus?: SourceInfo };
  /** Output file paths, relative to the manifest's directory. */
  outputs: { inventory?: string; corpus?: string };
  counts: {
    words?: number;
    senses?: number;
    definitions?: number;
    examples?: number;
    placeholderWords?: number;
    sentences?: number;
    tokens?: number;
    labelledTokens?: number;
  };
  labelledFraction?: number;
  warnings: { malformedAnnotations?: number };
  checksums: Record<string, string>;
};

export function emptyManifest(): ExportManifest {
  return {
    format: "wn-export-manifest",
    version: 1,
    sources: {},
    outputs: {},
    counts: {},
    warnings: {},
    checksums: {},
  };
}

export function sha256(text: string): string {
  return createHash("sha256").update(text, "utf-8").digest("hex");
}

export function readManifest(file: string): ExportManifest {
  if (!fs.existsSync(file)) return emptyManifest();
  const parsed = JSON.parse(fs.readFileSync(file, "utf-8")) as ExportManifest;
  if (parsed.format !== "wn-export-manifest") {
    throw new Error(`${file}: not a wn-export manifest`);
  }
  return { ...emptyManifest(), ...parsed };
}

/** Fixed field order so repeated exports produce byte-identical manifests. */
function orderedManifest(m: ExportManifest): ExportManifest {
  return {
    format: "wn-export-manifest",
    version: 1,
    sources: { db: m.sources.db, corpus: m.sources.corpus },
    outputs: { inventory: m.outputs.inventory, corpus: m.outputs.corpus },
    counts: {
      words: m.counts.words,
      senses: m.counts.senses,
      definitions: m.counts.definitions,
      examples: m.counts.examples,
      placeholderWords: m.counts.placeholderWords,
      sentences: m.counts.sentences,
      tokens: m.counts.tokens,
      labelledTokens: m.counts.labelledTokens,
    },
    labelledFraction: m.labelledFraction,
    warnings: { malformedAnnotations: m.warnings.malformedAnnotations },
    checksums: Object.fromEntries(
      Object.keys(m.checksums)
        .sort()
        .map((name) => [name, m.checksums[name]]),
    ),
  };
}

export function writeManifest(file: string, manifest: ExportManifest): void {
  fs.writeFileSync(file, `${JSON.stringify(orderedManifest(manifest), null, 2)}\n`);
}

/**
 * Cross-export invariant: every sense key appearing in the corpus JSON-lines
 * must exist in the inventory. Returns the sorted missing keys (empty when
 * the invariant holds).
 */
export function corpusKeysMissingFromInventory(doc: InventoryDoc, corpusText: string): string[] {
  const known = new Set<string>();
  for (const entry of Object.values(doc.words)) {
    for (const sense of entry.senses) known.add(sense.key);
  }
  const missing = new Set<string>();
  for (const line of corpusText.split("\n")) {
    if (!line.trim()) continue;
    const parsed = JSON.parse(line) as { senses: (string | null)[] };
    for (const sense of parsed.senses) {
      if (sense !== null && !known.has(sense)) missing.add(sense);
    }
  }
  return [...missing].sort();
}
