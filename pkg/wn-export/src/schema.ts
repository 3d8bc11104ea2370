/**
 * Schemas for the two output formats, mirroring what the multisense toolkit
 * ingests. Every export is validated against these before it is written.
 */
import { z } from "zod";

/** Keys look like "bank.n.01": lemma, pos and number, all non-empty. The
 * lemma itself may contain dots, so split from the right. */
function isSenseKey(key: string): boolean {
  const parts = key.split(".");
  if (parts.length < 3) return false;
  const lemma = parts.slice(0, -2).join(".");
  const pos = parts[parts.length - 2];
  const num = parts[parts.length - 1];
  return lemma.length > 0 && pos.length > 0 && num.length > 0;
}

export function keyLemma(key: string): string {
  return key.split(".").slice(0, -2).join(".");
}

export const senseKeySchema = z
  .string()
  .refine(isSenseKey, { message: "expected a lemma.pos.nn sense key" });

export const senseEntrySchema = z.object({
  key: senseKeySchema,
  definitions: z.array(z.string()),
  examples: z.array(z.string()),
  synonyms: z.array(senseKeySchema),
  antonyms: z.array(senseKeySchema),
});

export const inventorySchema = z
  .object({
    lemma_exceptions: z.record(z.string().min(1), z.string().min(1)),
    words: z.record(z.string().min(1), z.object({ senses: z.array(senseEntrySchema).min(1) })),
  })
  .superRefine((doc, ctx) => {
    for (const [word, entry] of Object.entries(doc.words)) {
      for (const sense of entry.senses) {
        if (keyLemma(sense.key).toLowerCase() !== word.toLowerCase()) {
          ctx.addIssue({
            code: "custom",
            message: `sense key ${sense.key} does not belong to word ${word}`,
            path: ["words", word],
          });
        }
      }
    }
  });

export const labelledLineSchema = z
  .object({
    tokens: z.array(z.string().min(1)).min(1),
    senses: z.array(senseKeySchema.nullable()),
  })
  .refine((line) => line.tokens.length === line.senses.length, {
    message: "tokens and senses must have the same length",
  });

function describeIssue(issue: { path: PropertyKey[]; message: string }): string {
  return issue.path.length > 0 ? `${issue.path.join(".")}: ${issue.message}` : issue.message;
}

export function validateInventoryDoc(doc: unknown): string[] {
  const result = inventorySchema.safeParse(doc);
  if (result.success) return [];
  return result.error.issues.map(describeIssue);
}

/** Validate a whole JSON-lines corpus text; returns one problem per issue. */
export function validateCorpusLines(text: string): string[] {
  const problems: string[] = [];
  text.split("\n").forEach((line, i) => {
    if (!line.trim()) return;
    let parsed: unknown;
    try {
      parsed = JSON.parse(line);
    } catch {
      problems.push(`line ${i + 1}: invalid JSON`);
      return;
    }
    const result = labelledLineSchema.safeParse(parsed);
    if (!result.success) {
      for (const issue of result.error.issues) {
        problems.push(`line ${i + 1}: ${describeIssue(issue)}`);
      }
    }
  });
  return problems;
}
