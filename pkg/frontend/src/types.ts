/** Payload shapes of the annotation service API. */

export type Mode = "match" | "approximate";
export type ApproxKind = "trigger" | "component";

export interface PropositionPayload {
  index: number;
  token_ranges: [number, number][];
  text: string;
}

export interface DocumentPayload {
  doc_id: string;
  genre: string;
  tokens: string[];
  sentences: [number, number][];
  propositions: PropositionPayload[];
  summaries: string[];
}

export interface DocumentListing {
  documents: { doc_id: string; genre: string; n_propositions: number; n_summaries: number }[];
}

export interface AlignmentJson {
  summary: number;
  prop: number;
  mode: Mode;
  approx_kind?: ApproxKind;
  duplicate_group?: string;
  note?: string;
  extra?: Record<string, unknown>;
}

export interface AnnotationJson {
  doc_id: string;
  annotator: string;
  schema_version: string;
  alignments: AlignmentJson[];
}

export interface StoredAnnotation {
  version: number;
  updated_at: string | null;
  annotation: AnnotationJson;
}

export interface SchemaFieldJson {
  key: string;
  label: string;
  kind: "checkbox" | "textbox";
  applies_when?: Mode;
}

export interface SchemaJson {
  version: string;
  fields: SchemaFieldJson[];
}

/** Six-step fill ramp for salience counts 0..5 (0 stays white). */
export const SCORE_RAMP = ["#FFFFFF", "#FFF7B2", "#FFE066", "#FFB347", "#FF7F50", "#E03C31"];

export function rampColor(score: number, summaryCount: number): string {
  if (score <= 0) return SCORE_RAMP[0]!;
  const index = Math.max(1, Math.round((5 * score) / summaryCount));
  return SCORE_RAMP[Math.min(index, 5)]!;
}
