"""Explaining a verdict: misleading degrees and what-if masking.

Run:  python3 demos/04_explain_a_verdict.py
"""

from newsgraph import (TrainConfig, analyze, explain_all, hash_only_store,
                       synthetic_corpus, what_if)
from newsgraph.pipeline import train_pipeline

store = hash_only_store(dim=300, fallback_seed=0)
records = synthetic_corpus(400, seed=0)
model = train_pipeline(records, store, TrainConfig(epochs=10,
                                                   rng_seed=0)).model

# Score one of the articles end to end.
article = records[-1].article_text()
doc = analyze(article, model, store)
label = model.label_names[doc.base_prediction.argmax]
print(f"article with {doc.graph.n_nodes} distinct words, "
      f"{doc.graph.n_edges} edges")
print(f"verdict: {label}  "
      f"(p_real {doc.base_prediction.p_real:.9f}, "
      f"p_fake {doc.base_prediction.p_fake:.9f})")
print()

# Mask each word in turn: the tracked probability shift is its misleading
# degree. Positive degree = the word was hindering the verdict.
report = explain_all(doc, model, workers=4)
ref = model.label_names[report.reference_class]
print(f"top 8 misleading words (reference class: {ref})")
print(f"{'rank':>4}  {'word':<14} {'degree':>15} {'masked p_' + ref:>14}")
for rank, e in enumerate(report.entries[:8], start=1):
    print(f"{rank:>4}  {e.word:<14} {e.misleading_degree:>+15.9f} "
          f"{e.masked_prediction[report.reference_class]:>14.9f}")
print()

# What-if masking applies several words at once without re-solving
# anything from scratch.
top_words = {e.word for e in report.entries[:3]}
masked = what_if(doc, model, top_words)
print(f"masking {sorted(top_words)} together:")
print(f"  p_{ref} {doc.base_prediction[report.reference_class]:.9f} "
      f"-> {masked[report.reference_class]:.9f}")

# The model itself is untouched by any of this: explanation never
# fine-tunes the network.
