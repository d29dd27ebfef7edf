/**
 * Deterministic sentence formality scorer.
 *
 * Stand-in for a fine-tuned ranker checkpoint: the checkpoint id is
 * configuration, but this default backend scores with fixed surface
 * features so identical requests always return identical outputs.
 * Scores are min-max squashed into [0, 1]; the normalization is recorded
 * in the model version string.
 */

export const FORMALITY_MODEL_VERSION = "formality-heuristic-v1+minmax01";

const INFORMAL = new Set([
  "lol", "lmao", "omg", "btw", "idk", "hey", "yo", "yeah", "yep", "nope",
  "gonna", "wanna", "gotta", "kinda", "sorta", "dunno", "u", "ur", "pls",
  "plz", "thx", "cuz", "whats", "dont", "cant", "wont", "im", "stuff",
]);

const FORMAL = new Set([
  "hereby", "moreover", "furthermore", "consequently", "therefore", "thus",
  "demonstrate", "demonstrates", "propose", "present", "findings", "novel",
  "methodology", "empirical", "significant", "respectively",
]);

function words(sentence: string): string[] {
  return sentence.toLowerCase().match(/[a-z0-9']+/g) ?? [];
}

export function scoreFormality(sentence: string): number {
  const toks = words(sentence);
  if (toks.length === 0) return 0.0;

  let raw = 0;
  const trimmed = sentence.trim();
  if (/^[A-Z]/.test(trimmed)) raw += 1.5;
  if (/[.?!]$/.test(trimmed)) raw += 1.5;
  if (/[;:]/.test(trimmed)) raw += 0.5;
  if (/!{2,}|\?{2,}/.test(trimmed)) raw -= 1.0;

  const avgLen = toks.reduce((n, t) => n + t.length, 0) / toks.length;
  raw += Math.min(Math.max(avgLen - 3, 0), 3); // longer words read as formal

  for (const t of toks) {
    if (INFORMAL.has(t)) raw -= 1.5;
    if (FORMAL.has(t)) raw += 1.0;
  }

  // min-max squash of the feature range into [0, 1]
  const MIN = -5;
  const MAX = 9;
  return Math.min(Math.max((raw - MIN) / (MAX - MIN), 0), 1);
}
