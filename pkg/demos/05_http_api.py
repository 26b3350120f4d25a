"""The HTTP API: prediction, async explain jobs, what-if requests.

Starts the service on a local port, walks through every endpoint with
plain urllib, then shuts down.

Run:  python3 demos/05_http_api.py
"""

import json
import threading
import time
import urllib.request

import uvicorn

from newsgraph import TrainConfig, hash_only_store, synthetic_corpus
from newsgraph.pipeline import train_pipeline
from newsgraph.service import create_app

PORT = 8765
BASE = f"http://127.0.0.1:{PORT}"


def call(path, payload=None):
    url = BASE + path
    if payload is None:
        req = urllib.request.Request(url)
    else:
        req = urllib.request.Request(
            url, data=json.dumps(payload).encode(),
            headers={"content-type": "application/json"})
    with urllib.request.urlopen(req) as resp:
        return json.loads(resp.read())


store = hash_only_store(dim=300, fallback_seed=0)
records = synthetic_corpus(300, seed=0)
model = train_pipeline(records, store,
                       TrainConfig(epochs=8, rng_seed=0)).model

server = uvicorn.Server(uvicorn.Config(
    create_app(model=model, store=store), host="127.0.0.1", port=PORT,
    log_level="warning"))
thread = threading.Thread(target=server.run, daemon=True)
thread.start()
while not server.started:
    time.sleep(0.05)

print("GET /api/health ->", call("/api/health"))
print()

article = records[-1].article_text()
pred = call("/api/predict", {"text": article})
print("POST /api/predict ->")
print(f"  p_real {pred['p_real']:.9f}  p_fake {pred['p_fake']:.9f}  "
      f"({pred['n_nodes']} nodes, {pred['n_edges']} edges)")
print()

# Explanation is a polled job: one incremental masking pass per word.
job = call("/api/explain", {"text": article, "top_k": 5})
print("POST /api/explain ->", job)
while True:
    status = call(f"/api/explain/{job['job_id']}")
    print(f"  poll: status={status['status']:<8} "
          f"stage={status['stage']:<14} progress={status['progress']:.2f}")
    if status["status"] in ("done", "failed"):
        break
    time.sleep(0.2)
top = status["result"]["entries"][0]
print(f"  top word: {top['word']!r} degree {top['misleading_degree']:+.9f}")
print()

whatif = call("/api/whatif", {"text": article,
                              "masked_words": [top["word"]]})
print("POST /api/whatif masking the top word ->")
print(f"  delta for the predicted class: "
      f"{whatif['delta_reference_class']:+.9f}")

server.should_exit = True
thread.join(timeout=5)
