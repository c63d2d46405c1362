/** DOM application: summary tabs, clickable proposition spans, note dialog,
 * versioned saves with a conflict dialog. One active summary at a time; the
 * read-only heat view tints spans by how many summaries align each unit. */

import { ApiClient, ConflictError } from "./api.js";
import { AnnotationState } from "./state.js";
import { rampColor } from "./types.js";
import type { DocumentPayload, Mode, SchemaJson } from "./types.js";

interface PartInFlow {
  prop: number;
  start: number;
  end: number;
}

export class App {
  state: AnnotationState | null = null;
  doc: DocumentPayload | null = null;
  schema: SchemaJson = { version: "1", fields: [] };
  activeSummary = 0;
  heatView = false;
  focusedProp = 0;
  private annotator = "";
  private openNote: { summary: number; prop: number } | null = null;
  private conflictVersion: number | null = null;
  private statusText = "";

  constructor(
    readonly root: HTMLElement,
    readonly client: ApiClient,
  ) {
    this.root.addEventListener("keydown", (event) => this.onKey(event as KeyboardEvent));
  }

  async load(docId: string, annotator: string): Promise<void> {
    if (this.state?.dirty && !window.confirm("Discard unsaved changes?")) return;
    this.annotator = annotator;
    this.doc = await this.client.document(docId);
    this.schema = await this.client.schema();
    this.state = new AnnotationState(
      docId,
      annotator,
      this.doc.summaries.length,
      this.doc.propositions.length,
      this.schema.version,
    );
    const stored = await this.client.annotation(docId, annotator);
    this.state.loadFrom(stored);
    this.activeSummary = 0;
    this.heatView = false;
    this.focusedProp = 0;
    this.openNote = null;
    this.conflictVersion = null;
    this.statusText = `loaded version ${stored.version}`;
    this.render();
  }

  async save(): Promise<void> {
    if (!this.state || !this.doc) return;
    this.statusText = "saving…";
    this.render();
    try {
      const result = await this.client.save(
        this.doc.doc_id,
        this.annotator,
        this.state.version,
        this.state.toAnnotation(),
      );
      this.state.version = result.version;
      this.state.dirty = false;
      this.conflictVersion = null;
      this.statusText = `saved as version ${result.version}`;
    } catch (error) {
      if (error instanceof ConflictError) {
        // never overwrite silently: surface the conflict, keep local edits
        this.conflictVersion = error.currentVersion;
        this.statusText = `version conflict: server is at ${error.currentVersion}`;
      } else {
        this.statusText = `save failed (${(error as Error).message}); changes kept locally, retry`;
      }
    }
    this.render();
  }

  async resolveConflictReload(): Promise<void> {
    if (!this.state || !this.doc) return;
    const stored = await this.client.annotation(this.doc.doc_id, this.annotator);
    this.state.loadFrom(stored);
    this.conflictVersion = null;
    this.statusText = `reloaded server version ${stored.version}`;
    this.render();
  }

  async resolveConflictOverwrite(): Promise<void> {
    if (!this.state || !this.doc || this.conflictVersion == null) return;
    this.state.version = this.conflictVersion;
    this.conflictVersion = null;
    await this.save();
  }

  toggleProp(prop: number): void {
    if (!this.state || this.heatView) return;
    this.state.toggle(this.activeSummary, prop);
    if (this.openNote?.prop === prop && !this.state.isHighlighted(this.activeSummary, prop)) {
      this.openNote = null;
    }
    this.focusedProp = prop;
    this.render();
  }

  private onKey(event: KeyboardEvent): void {
    if (!this.doc || !this.state) return;
    const nProps = this.doc.propositions.length;
    if (event.key === "ArrowDown" || event.key === "j") {
      this.focusedProp = Math.min(nProps - 1, this.focusedProp + 1);
    } else if (event.key === "ArrowUp" || event.key === "k") {
      this.focusedProp = Math.max(0, this.focusedProp - 1);
    } else if (event.key === " " || event.key === "Enter") {
      this.toggleProp(this.focusedProp);
      return;
    } else if (event.key === "n") {
      if (this.state.isHighlighted(this.activeSummary, this.focusedProp)) {
        this.openNote = { summary: this.activeSummary, prop: this.focusedProp };
      }
    } else if (/^[1-9]$/.test(event.key)) {
      const index = Number(event.key) - 1;
      if (index < this.doc.summaries.length) {
        this.activeSummary = index;
        this.openNote = null;
      }
    } else {
      return;
    }
    event.preventDefault();
    this.render();
  }

  /** Proposition parts in document order (token ranges tile the document). */
  private partsInFlow(): PartInFlow[] {
    const parts: PartInFlow[] = [];
    for (const prop of this.doc!.propositions) {
      for (const [start, end] of prop.token_ranges) {
        parts.push({ prop: prop.index, start, end });
      }
    }
    parts.sort((a, b) => a.start - b.start);
    return parts;
  }

  render(): void {
    if (!this.doc || !this.state) return;
    const doc = this.doc;
    const state = this.state;
    this.root.textContent = "";
    this.root.tabIndex = 0;

    const header = el("div", "header");
    header.append(
      el("span", "doc-name", `${doc.doc_id} (${doc.genre})`),
      el("span", "annotator-name", `annotator: ${this.annotator}`),
    );
    const saveBtn = el("button", "save-btn", state.dirty ? "Save *" : "Save") as HTMLButtonElement;
    saveBtn.id = "save-btn";
    saveBtn.addEventListener("click", () => void this.save());
    header.append(saveBtn);
    const status = el("span", "status", this.statusText);
    status.id = "status";
    header.append(status);
    this.root.append(header);

    // summary tabs on top, plus the read-only heat view
    const tabs = el("div", "tabs");
    doc.summaries.forEach((_, index) => {
      const tab = el("button", "summary-tab", `Summary ${index + 1}`);
      tab.dataset.summary = String(index);
      if (!this.heatView && index === this.activeSummary) tab.classList.add("active");
      const count = state.highlightedProps(index).length;
      if (count > 0) tab.append(el("span", "tab-count", ` (${count})`));
      tab.addEventListener("click", () => {
        this.activeSummary = index;
        this.heatView = false;
        this.openNote = null;
        this.render();
      });
      tabs.append(tab);
    });
    const heatTab = el("button", "heat-tab", "All summaries (heat)");
    if (this.heatView) heatTab.classList.add("active");
    heatTab.addEventListener("click", () => {
      this.heatView = !this.heatView;
      this.openNote = null;
      this.render();
    });
    tabs.append(heatTab);
    this.root.append(tabs);

    if (!this.heatView) {
      const summaryText = doc.summaries[this.activeSummary] ?? "";
      this.root.append(el("div", "summary-text", summaryText));
    } else {
      this.root.append(el("div", "summary-text heat-note",
        "Read-only view: spans tinted by how many summaries mention them."));
    }

    const body = el("div", "doc-body");
    const counts = state.countsByProp();
    const highlighted = new Set(state.highlightedProps(this.activeSummary));
    for (const part of this.partsInFlow()) {
      const span = el("span", "prop-span", doc.tokens.slice(part.start, part.end).join(" "));
      span.dataset.prop = String(part.prop);
      span.title = `proposition ${part.prop}`;
      if (this.heatView) {
        span.style.backgroundColor = rampColor(counts[part.prop] ?? 0, doc.summaries.length);
        span.classList.add("heat");
      } else {
        if (highlighted.has(part.prop)) span.classList.add("highlighted");
        if (part.prop === this.focusedProp) span.classList.add("focused");
        span.addEventListener("click", () => this.toggleProp(part.prop));
      }
      body.append(span);
      // the note button sits next to the last part of a highlighted unit
      if (!this.heatView && highlighted.has(part.prop) && this.isLastPart(part)) {
        const noteBtn = el("button", "note-btn", "✎");
        noteBtn.dataset.prop = String(part.prop);
        noteBtn.title = "edit alignment details";
        noteBtn.addEventListener("click", (event) => {
          event.stopPropagation();
          this.openNote = { summary: this.activeSummary, prop: part.prop };
          this.render();
        });
        body.append(noteBtn);
      }
      body.append(document.createTextNode(" "));
    }
    this.root.append(body);

    if (this.openNote) this.renderNoteDialog(this.openNote.summary, this.openNote.prop);
    if (this.conflictVersion != null) this.renderConflictDialog();
  }

  private isLastPart(part: PartInFlow): boolean {
    const ranges = this.doc!.propositions[part.prop]!.token_ranges;
    const last = ranges[ranges.length - 1]!;
    return last[0] === part.start && last[1] === part.end;
  }

  private renderNoteDialog(summary: number, prop: number): void {
    const state = this.state!;
    const note = state.note(summary, prop);
    if (!note) return;
    const overlay = el("div", "overlay");
    const dialog = el("div", "note-dialog");
    dialog.append(el("h3", "", `Alignment details — proposition ${prop}, summary ${summary + 1}`));

    // mode: match (default) or approximate
    const modeRow = el("div", "field-row");
    for (const mode of ["match", "approximate"] as Mode[]) {
      const label = el("label", "mode-label", mode);
      const radio = document.createElement("input");
      radio.type = "radio";
      radio.name = "mode";
      radio.value = mode;
      radio.checked = note.mode === mode;
      radio.addEventListener("change", () => {
        state.setMode(summary, prop, mode);
        this.render();
      });
      label.prepend(radio);
      modeRow.append(label);
    }
    dialog.append(modeRow);

    // approx kind: enabled only when approximate (component impossible under match)
    const kindRow = el("div", "field-row");
    kindRow.append(el("span", "", "kind: "));
    const kindSelect = document.createElement("select");
    kindSelect.className = "approx-kind";
    for (const kind of ["trigger", "component"]) {
      const option = document.createElement("option");
      option.value = kind;
      option.textContent = kind;
      kindSelect.append(option);
    }
    kindSelect.value = note.approxKind ?? "trigger";
    kindSelect.disabled = note.mode !== "approximate";
    kindSelect.addEventListener("change", () => {
      state.setApproxKind(summary, prop, kindSelect.value as "trigger" | "component");
      this.render();
    });
    kindRow.append(kindSelect);
    dialog.append(kindRow);

    // duplicate group: pick an existing group in this summary or start a new one
    const groupRow = el("div", "field-row");
    groupRow.append(el("span", "", "duplicate group: "));
    const groupSelect = document.createElement("select");
    groupSelect.className = "duplicate-group";
    const noneOption = document.createElement("option");
    noneOption.value = "";
    noneOption.textContent = "(none)";
    groupSelect.append(noneOption);
    for (const group of state.groupsInSummary(summary)) {
      const option = document.createElement("option");
      option.value = group;
      option.textContent = group;
      groupSelect.append(option);
    }
    const newOption = document.createElement("option");
    newOption.value = "__new__";
    newOption.textContent = "new group…";
    groupSelect.append(newOption);
    groupSelect.value = note.duplicateGroup ?? "";
    groupSelect.addEventListener("change", () => {
      if (groupSelect.value === "__new__") {
        const name = window.prompt("Name for the new duplicate group:", `g${Date.now() % 1000}`);
        state.setDuplicateGroup(summary, prop, name);
      } else {
        state.setDuplicateGroup(summary, prop, groupSelect.value || null);
      }
      this.render();
    });
    groupRow.append(groupSelect);
    dialog.append(groupRow);

    const noteRow = el("div", "field-row");
    const textarea = document.createElement("textarea");
    textarea.className = "note-text";
    textarea.placeholder = "free-text note";
    textarea.value = note.note;
    textarea.addEventListener("change", () => state.setNoteText(summary, prop, textarea.value));
    noteRow.append(textarea);
    dialog.append(noteRow);

    // schema-driven custom fields
    for (const field of this.schema.fields) {
      if (field.applies_when && field.applies_when !== note.mode) continue;
      const row = el("div", "field-row custom-field");
      if (field.kind === "checkbox") {
        const label = el("label", "", field.label);
        const box = document.createElement("input");
        box.type = "checkbox";
        box.dataset.key = field.key;
        box.checked = Boolean(note.extra[field.key]);
        box.addEventListener("change", () => state.setExtra(summary, prop, field.key, box.checked));
        label.prepend(box);
        row.append(label);
      } else {
        row.append(el("span", "", `${field.label}: `));
        const input = document.createElement("input");
        input.type = "text";
        input.dataset.key = field.key;
        input.value = String(note.extra[field.key] ?? "");
        input.addEventListener("change", () => state.setExtra(summary, prop, field.key, input.value));
        row.append(input);
      }
      dialog.append(row);
    }

    const close = el("button", "close-note", "Close");
    close.addEventListener("click", () => {
      this.openNote = null;
      this.render();
    });
    dialog.append(close);
    overlay.append(dialog);
    this.root.append(overlay);
  }

  private renderConflictDialog(): void {
    const overlay = el("div", "overlay");
    const dialog = el("div", "conflict-dialog");
    dialog.append(el("h3", "", "Save conflict"));
    dialog.append(
      el(
        "p",
        "",
        `The server has version ${this.conflictVersion}, but this session started from ` +
          `version ${this.state!.version}. Nothing was overwritten and your local changes are intact.`,
      ),
    );
    const reload = el("button", "conflict-reload", "Discard my changes, load server version");
    reload.id = "conflict-reload";
    reload.addEventListener("click", () => void this.resolveConflictReload());
    const overwrite = el("button", "conflict-overwrite", "Save my version on top");
    overwrite.id = "conflict-overwrite";
    overwrite.addEventListener("click", () => void this.resolveConflictOverwrite());
    dialog.append(reload, overwrite);
    overlay.append(dialog);
    this.root.append(overlay);
  }
}

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}
