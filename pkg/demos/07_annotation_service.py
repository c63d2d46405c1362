"""The annotation HTTP service: reads, versioned writes, conflict handling.

Starts the server on an ephemeral port with a temporary data directory,
walks through the API the browser UI uses, then shuts down.
"""

import json
import tempfile
import urllib.request
from pathlib import Path

from propsalience import AnnotationStore, load_corpus, load_manifest
from propsalience.corpus import load_schema
from propsalience.server import AnnotationService, start_background

HERE = Path(__file__).parent
manifest = load_manifest(HERE / "data" / "toy_corpus" / "manifest.json")


def call(method, url, body=None):
    data = json.dumps(body).encode() if body is not None else None
    request = urllib.request.Request(url, data=data, method=method,
                                     headers={"Content-Type": "application/json"})
    try:
        with urllib.request.urlopen(request) as response:
            return response.status, json.loads(response.read())
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read())


with tempfile.TemporaryDirectory() as tmp:
    service = AnnotationService(
        load_corpus(manifest), AnnotationStore(tmp), schema=load_schema(manifest)
    )
    server, base = start_background(service)
    print(f"service running at {base}\n")

    status, listing = call("GET", f"{base}/api/documents")
    print("documents:", [d["doc_id"] for d in listing["documents"]])

    status, doc = call("GET", f"{base}/api/documents/news_document")
    print(f"news_document: {len(doc['propositions'])} propositions, "
          f"{len(doc['summaries'])} summaries")

    status, fresh = call("GET", f"{base}/api/annotations/news_document/demo")
    print(f"\nfresh annotation state: version {fresh['version']}, "
          f"{len(fresh['annotation']['alignments'])} alignments")

    annotation = {
        "doc_id": "news_document",
        "annotator": "demo",
        "schema_version": "1",
        "alignments": [
            {"summary": 0, "prop": 2, "mode": "match"},
            {"summary": 0, "prop": 0, "mode": "match", "duplicate_group": "title"},
        ],
    }
    status, result = call("PUT", f"{base}/api/annotations/news_document/demo",
                          {"version": 0, "annotation": annotation})
    print(f"first write accepted: version {result['version']}")

    # a second client writing against the stale version gets a conflict
    status, conflict = call("PUT", f"{base}/api/annotations/news_document/demo",
                            {"version": 0, "annotation": annotation})
    print(f"stale write: HTTP {status}, server is at version {conflict['current_version']}")

    status, result = call("PUT", f"{base}/api/annotations/news_document/demo",
                          {"version": 1, "annotation": annotation})
    print(f"retry with the current version: accepted as version {result['version']}")

    server.shutdown()
    server.server_close()
    print("\nserver stopped")
