/** Thin fetch client for the annotation service. */

import type {
  AnnotationJson,
  DocumentListing,
  DocumentPayload,
  SchemaJson,
  StoredAnnotation,
} from "./types.js";

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

/** A write quoted a version the server has already moved past. */
export class ConflictError extends ApiError {
  constructor(message: string, readonly currentVersion: number) {
    super(message, 409);
  }
}

async function parseError(response: Response): Promise<never> {
  let message = `${response.status} ${response.statusText}`;
  let current = -1;
  try {
    const body = (await response.json()) as { error?: string; current_version?: number };
    if (body.error) message = body.error;
    if (typeof body.current_version === "number") current = body.current_version;
  } catch {
    /* non-JSON error body */
  }
  if (response.status === 409) throw new ConflictError(message, current);
  throw new ApiError(message, response.status);
}

export class ApiClient {
  constructor(readonly base: string = "") {}

  private async get<T>(path: string): Promise<T> {
    const response = await fetch(`${this.base}${path}`);
    if (!response.ok) await parseError(response);
    return (await response.json()) as T;
  }

  documents(): Promise<DocumentListing> {
    return this.get("/api/documents");
  }

  document(docId: string): Promise<DocumentPayload> {
    return this.get(`/api/documents/${encodeURIComponent(docId)}`);
  }

  schema(): Promise<SchemaJson> {
    return this.get("/api/schema");
  }

  annotation(docId: string, annotator: string): Promise<StoredAnnotation> {
    return this.get(
      `/api/annotations/${encodeURIComponent(docId)}/${encodeURIComponent(annotator)}`,
    );
  }

  async save(
    docId: string,
    annotator: string,
    version: number,
    annotation: AnnotationJson,
  ): Promise<{ version: number }> {
    const url = `${this.base}/api/annotations/${encodeURIComponent(docId)}/${encodeURIComponent(annotator)}`;
    const response = await fetch(url, {
      method: "PUT",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ version, annotation }),
    });
    if (!response.ok) await parseError(response);
    return (await response.json()) as { version: number };
  }
}
