/**
 * Deterministic narrative-function classifier over the fixed 5-class set.
 *
 * Keyword rules ordered by precedence; sentences matching nothing fall back
 * to "background" when they read like prose context, else "other".
 */

export const NARRATIVE_MODEL_VERSION = "narrative-heuristic-v1";

export type NarrativeLabel = "background" | "objective" | "method" | "result" | "other";

export const LABELS: readonly NarrativeLabel[] = [
  "background", "objective", "method", "result", "other",
];

const OBJECTIVE = /\b(we (propose|present|introduce|aim|investigate|study|address)|this (paper|work|study) (proposes|presents|introduces|investigates|addresses)|our (goal|aim|objective)|in this (paper|work|study))\b/i;
const RESULT = /\b(results? (show|indicate|suggest|demonstrate)|we (show|find|found|observe|demonstrate|achieve)|outperforms?|improv(es|ed|ement)|accurac(y|ies)|experiments? (show|demonstrate)|achiev(es|ed))\b/i;
const METHOD = /\b(we (use|used|train|trained|apply|applied|implement|compute|combine|model|evaluate|compare)|our (method|approach|model|system|pipeline)|based on|by (using|applying|training)|algorithm|architecture)\b/i;
const BACKGROUND = /\b(recent(ly)?|prior work|previous (work|studies)|traditionally|has (been|become)|have (been|become)|increasingly|widely (used|studied)|over the (past|last)|remains? (a |an )?(challenge|open)|is (a |an )?(central|important|fundamental))\b/i;

export function classifyNarrative(sentence: string): NarrativeLabel {
  if (OBJECTIVE.test(sentence)) return "objective";
  if (RESULT.test(sentence)) return "result";
  if (METHOD.test(sentence)) return "method";
  if (BACKGROUND.test(sentence)) return "background";
  // prose-looking sentences default to context; fragments and noise to other
  const wordCount = (sentence.match(/[a-z]+/gi) ?? []).length;
  return wordCount >= 4 ? "background" : "other";
}
