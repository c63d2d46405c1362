"""HTTP service backing the annotation interface.

JSON API over the ingested corpus plus the versioned annotation store, and
static serving for the UI bundle. Annotator identity is an honor-system
string; concurrency control is the store's per-file version check.
"""

from __future__ import annotations

import json
import mimetypes
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .annotations import AnnotationSchema, annotation_set_from_obj, annotation_set_to_obj
from .errors import DataError, PropositionReferenceError, VersionConflictError
from .storage import AnnotationStore


class AnnotationService:
    """Request-independent application state shared by all handler threads."""

    def __init__(self, bundles, store: AnnotationStore, schema: AnnotationSchema | None = None,
                 static_dir=None):
        self.bundles = {bundle.doc_id: bundle for bundle in bundles}
        self.store = store
        self.schema = schema or AnnotationSchema()
        self.static_dir = Path(static_dir) if static_dir else None

    def document_listing(self):
        return {
            "documents": [
                {
                    "doc_id": b.doc_id,
                    "genre": b.genre,
                    "n_propositions": len(b.seq),
                    "n_summaries": b.summary_count,
                }
                for b in sorted(self.bundles.values(), key=lambda b: b.doc_id)
            ]
        }

    def document_payload(self, doc_id):
        bundle = self.bundles[doc_id]
        return {
            "doc_id": bundle.doc_id,
            "genre": bundle.genre,
            "tokens": list(bundle.meta.tokens),
            "sentences": [list(r) for r in bundle.meta.sentences],
            "propositions": [
                {
                    "index": p.index,
                    "token_ranges": [list(r) for r in p.token_ranges],
                    "text": p.text,
                }
                for p in bundle.seq
            ],
            "summaries": list(bundle.summaries.summaries),
        }

    def get_annotation(self, doc_id, annotator):
        stored = self.store.load(doc_id, annotator, seq=self.bundles[doc_id].seq)
        if stored is None:
            empty = {
                "doc_id": doc_id,
                "annotator": annotator,
                "schema_version": self.schema.to_json_obj()["version"],
                "alignments": [],
            }
            return {"version": 0, "updated_at": None, "annotation": empty}
        return {
            "version": stored.version,
            "updated_at": stored.updated_at,
            "annotation": annotation_set_to_obj(stored.annotation),
        }

    def put_annotation(self, doc_id, annotator, body):
        version = body.get("version")
        if not isinstance(version, int):
            raise DataError("write payload needs an integer 'version'")
        aset = annotation_set_from_obj(body.get("annotation", {}), seq=self.bundles[doc_id].seq)
        if aset.doc_id != doc_id:
            raise DataError(f"annotation doc_id {aset.doc_id!r} does not match URL {doc_id!r}")
        if aset.annotator != annotator:
            raise DataError(f"annotation annotator {aset.annotator!r} does not match URL {annotator!r}")
        stored = self.store.save(doc_id, annotator, aset, expected_version=version)
        return {"version": stored.version, "updated_at": stored.updated_at}


class _Handler(BaseHTTPRequestHandler):
    service: AnnotationService = None  # set by make_server
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # quiet by default; tests capture stderr
        pass

    def _send_json(self, obj, status=200):
        data = json.dumps(obj, ensure_ascii=False).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def _send_error_json(self, message, status, **extra):
        self._send_json({"error": message, **extra}, status=status)

    def _route(self):
        return [part for part in self.path.split("?")[0].split("/") if part]

    def do_GET(self):
        parts = self._route()
        service = self.service
        try:
            if parts[:2] == ["api", "documents"] and len(parts) == 2:
                self._send_json(service.document_listing())
            elif parts[:2] == ["api", "documents"] and len(parts) == 3:
                doc_id = parts[2]
                if doc_id not in service.bundles:
                    self._send_error_json(f"unknown document {doc_id!r}", 404)
                    return
                self._send_json(service.document_payload(doc_id))
            elif parts == ["api", "schema"]:
                self._send_json(service.schema.to_json_obj())
            elif parts[:2] == ["api", "annotations"] and len(parts) == 4:
                doc_id, annotator = parts[2], parts[3]
                if doc_id not in service.bundles:
                    self._send_error_json(f"unknown document {doc_id!r}", 404)
                    return
                self._send_json(service.get_annotation(doc_id, annotator))
            elif parts[:1] == ["api"]:
                self._send_error_json("unknown API endpoint", 404)
            else:
                self._send_static(parts)
        except DataError as exc:
            self._send_error_json(str(exc), 400)

    def do_PUT(self):
        parts = self._route()
        service = self.service
        if parts[:2] != ["api", "annotations"] or len(parts) != 4:
            self._send_error_json("unknown API endpoint", 404)
            return
        doc_id, annotator = parts[2], parts[3]
        if doc_id not in service.bundles:
            self._send_error_json(f"unknown document {doc_id!r}", 404)
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            body = json.loads(self.rfile.read(length) or b"{}")
        except (ValueError, json.JSONDecodeError) as exc:
            self._send_error_json(f"invalid JSON body: {exc}", 400)
            return
        try:
            result = service.put_annotation(doc_id, annotator, body)
        except VersionConflictError as exc:
            self._send_error_json(str(exc), 409, current_version=exc.current)
            return
        except (PropositionReferenceError, DataError) as exc:
            self._send_error_json(str(exc), 400)
            return
        self._send_json(result)

    def _send_static(self, parts):
        static_dir = self.service.static_dir
        if static_dir is None:
            self._send_error_json("no UI bundle configured", 404)
            return
        if parts and parts[0] == "ui":
            parts = parts[1:]
        rel = "/".join(parts) or "index.html"
        target = (static_dir / rel).resolve()
        if not target.is_relative_to(static_dir.resolve()) or not target.is_file():
            self._send_error_json(f"not found: /{rel}", 404)
            return
        data = target.read_bytes()
        content_type = mimetypes.guess_type(target.name)[0] or "application/octet-stream"
        self.send_response(200)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)


def make_server(service: AnnotationService, host="127.0.0.1", port=0) -> ThreadingHTTPServer:
    handler = type("BoundHandler", (_Handler,), {"service": service})
    return ThreadingHTTPServer((host, port), handler)


def serve_forever(service: AnnotationService, host, port):
    server = make_server(service, host=host, port=port)
    address = f"{server.server_address[0]}:{server.server_address[1]}"
    print(f"annotation service listening on http://{address}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()


def start_background(service: AnnotationService, host="127.0.0.1", port=0):
    """Start a server thread; returns (server, base_url). Used by tests and demos."""
    server = make_server(service, host=host, port=port)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    host, port = server.server_address[0], server.server_address[1]
    return server, f"http://{host}:{port}"
