#!/usr/bin/env node
/**
 * Command-line entry points.
 *
 *   wn-export export-inventory --db <dir> --out inventory.json [--filter words.txt]
 *   wn-export export-corpus --corpus <path...> --out labelled.jsonl
 *
 * Both commands update a shared manifest (default: manifest.json next to the
 * output) with source info, counts and checksums; once both outputs are
 * recorded, the corpus/inventory key invariant is enforced.
 */
import * as fs from "node:fs";
import * as path from "node:path";
import { pathToFileURL } from "node:url";

import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { exportCorpus, serializeCorpus } from "./corpus.js";
import { exportInventory, serializeInventory, type InventoryDoc } from "./inventory.js";
import {
  corpusKeysMissingFromInventory,
  readManifest,
  sha256,
  writeManifest,
  type ExportManifest,
} from "./manifest.js";
import { validateCorpusLines, validateInventoryDoc } from "./schema.js";
import { openDb } from "./wndb.js";

function manifestPathFor(out: string, explicit?: string): string {
  return explicit ?? path.join(path.dirname(out), "manifest.json");
}

/**
 * When the manifest records both outputs and both files are readable, check
 * that every corpus sense key exists in the inventory. Returns the missing
 * keys, or null when the pair is not yet complete.
 */
function crossExportMissing(manifestPath: string, manifest: ExportManifest): string[] | null {
  const dir = path.dirname(manifestPath);
  if (!manifest.outputs.inventory || !manifest.outputs.corpus) return null;
  const inventoryPath = path.resolve(dir, manifest.outputs.inventory);
  const corpusPath = path.resolve(dir, manifest.outputs.corpus);
  if (!fs.existsSync(inventoryPath) || !fs.existsSync(corpusPath)) return null;
  const doc = JSON.parse(fs.readFileSync(inventoryPath, "utf-8")) as InventoryDoc;
  return corpusKeysMissingFromInventory(doc, fs.readFileSync(corpusPath, "utf-8"));
}

function reportCrossExport(missing: string[] | null): number {
  if (missing === null || missing.length === 0) return 0;
  const shown = missing.slice(0, 5).join(", ");
  console.error(
    `error: ${missing.length} corpus sense keys are missing from the inventory ` +
      `(e.g. ${shown}); re-run export-inventory with a filter covering the corpus`,
  );
  return 1;
}

type InventoryArgs = {
  db: string;
  out: string;
  filter?: string;
  manifest?: string;
  dbName: string;
  dbVersion: string;
};

function runExportInventory(argv: InventoryArgs): number {
  const db = openDb(argv.db);
  let filter: string[] | undefined;
  if (argv.filter !== undefined) {
    if (!fs.existsSync(argv.filter)) {
      throw new Error(`filter file does not exist: ${argv.filter}`);
    }
    filter = fs
      .readFileSync(argv.filter, "utf-8")
      .split(/\r?\n/)
      .map((line) => line.trim())
      .filter((line) => line.length > 0);
  }
  const result = exportInventory(db, filter);
  const problems = validateInventoryDoc(result.doc);
  if (problems.length > 0) {
    throw new Error(`refusing to write schema-invalid inventory: ${problems[0]}`);
  }
  const text = serializeInventory(result.doc);
  fs.mkdirSync(path.dirname(path.resolve(argv.out)), { recursive: true });
  fs.writeFileSync(argv.out, text);

  const manifestPath = manifestPathFor(argv.out, argv.manifest);
  const manifest = readManifest(manifestPath);
  manifest.sources.db = { name: argv.dbName, version: argv.dbVersion, path: argv.db };
  manifest.outputs.inventory = path.relative(path.dirname(manifestPath), argv.out) || path.basename(argv.out);
  manifest.counts.words = result.counts.words;
  manifest.counts.senses = result.counts.senses;
  manifest.counts.definitions = result.counts.definitions;
  manifest.counts.examples = result.counts.examples;
  manifest.counts.placeholderWords = result.placeholders.length;
  manifest.checksums[manifest.outputs.inventory] = sha256(text);
  writeManifest(manifestPath, manifest);

  console.log(
    `wrote ${argv.out}: ${result.counts.words} words, ${result.counts.senses} senses, ` +
      `${result.counts.definitions} definitions, ${result.counts.examples} examples ` +
      `(${result.placeholders.length} placeholder words)`,
  );
  return reportCrossExport(crossExportMissing(manifestPath, manifest));
}

type CorpusArgs = {
  corpus: string[];
  out: string;
  manifest?: string;
  corpusName: string;
  corpusVersion: string;
};

function runExportCorpus(argv: CorpusArgs): number {
  const result = exportCorpus(argv.corpus);
  const text = serializeCorpus(result.lines);
  const problems = validateCorpusLines(text);
  if (problems.length > 0) {
    throw new Error(`refusing to write schema-invalid corpus: ${problems[0]}`);
  }
  fs.mkdirSync(path.dirname(path.resolve(argv.out)), { recursive: true });
  fs.writeFileSync(argv.out, text);

  const manifestPath = manifestPathFor(argv.out, argv.manifest);
  const manifest = readManifest(manifestPath);
  manifest.sources.corpus = {
    name: argv.corpusName,
    version: argv.corpusVersion,
    path: argv.corpus.join(path.delimiter),
  };
  manifest.outputs.corpus = path.relative(path.dirname(manifestPath), argv.out) || path.basename(argv.out);
  manifest.counts.sentences = result.counts.sentences;
  manifest.counts.tokens = result.counts.tokens;
  manifest.counts.labelledTokens = result.counts.labelledTokens;
  manifest.labelledFraction = result.labelledFraction;
  manifest.warnings.malformedAnnotations = result.malformedAnnotations;
  manifest.checksums[manifest.outputs.corpus] = sha256(text);
  writeManifest(manifestPath, manifest);

  const pct = (result.labelledFraction * 100).toFixed(1);
  console.log(
    `wrote ${argv.out}: ${result.counts.sentences} sentences, ${result.counts.tokens} tokens, ` +
      `${result.counts.labelledTokens} labelled (${pct}%), ` +
      `${result.malformedAnnotations} malformed annotations skipped`,
  );
  return reportCrossExport(crossExportMissing(manifestPath, manifest));
}

function guarded(run: () => number): void {
  try {
    process.exitCode = run();
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : String(err)}`);
    process.exitCode = 1;
  }
}

export async function main(argv: string[]): Promise<void> {
  await yargs(argv)
    .scriptName("wn-export")
    .command(
      "export-inventory",
      "write a sense inventory JSON from a WordNet-style database",
      (y) =>
        y
          .option("db", {
            type: "string",
            demandOption: true,
            describe: "WNDB directory (index.*/data.*/*.exc files)",
          })
          .option("out", { type: "string", demandOption: true, describe: "inventory JSON to write" })
          .option("filter", {
            type: "string",
            describe: "newline-separated vocabulary; absent words get dummy placeholders",
          })
          .option("manifest", { type: "string", describe: "manifest path (default: manifest.json beside --out)" })
          .option("db-name", { type: "string", default: "wordnet", describe: "source name recorded in the manifest" })
          .option("db-version", { type: "string", default: "unknown", describe: "source version recorded in the manifest" }),
      (a) => guarded(() => runExportInventory(a as unknown as InventoryArgs)),
    )
    .command(
      "export-corpus",
      "write labelled JSON-lines from sense-annotated concordance files",
      (y) =>
        y
          .option("corpus", {
            type: "string",
            array: true,
            demandOption: true,
            describe: "concordance file(s) or directories",
          })
          .option("out", { type: "string", demandOption: true, describe: "JSON-lines file to write" })
          .option("manifest", { type: "string", describe: "manifest path (default: manifest.json beside --out)" })
          .option("corpus-name", { type: "string", default: "semcor", describe: "source name recorded in the manifest" })
          .option("corpus-version", { type: "string", default: "unknown", describe: "source version recorded in the manifest" }),
      (a) => guarded(() => runExportCorpus(a as unknown as CorpusArgs)),
    )
    .demandCommand(1, "choose a command: export-inventory or export-corpus")
    .strict()
    .help()
    .parseAsync();
}

const isMain =
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(path.resolve(process.argv[1])).href;
if (isMain) {
  void main(hideBin(process.argv));
}
