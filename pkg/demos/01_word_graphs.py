"""Word co-occurrence graphs: tokenizing, windows, and masking.

Run:  python3 demos/01_word_graphs.py
"""

from newsgraph import build_word_graph, mask_nodes, tokenize

# Tokenization lowercases and keeps stop words; punctuation separates.
text = "I eat an apple. Don't eat two apples!"
tokens = tokenize(text)
print("text:  ", text)
print("tokens:", tokens)
print()

# Every pair of distinct words co-occurring in a 3-token window is an edge.
graph = build_word_graph(tokenize("I eat an apple"), k=3)
print("'I eat an apple' with k=3")
print("  nodes:", graph.words)
print("  edges:", sorted(tuple(sorted(e)) for e in
                         (map(graph.words.__getitem__, pair)
                          for pair in graph.edge_set())))
print("  degrees:", dict(zip(graph.words, graph.degree.tolist())))
print()

# Masking a word removes its edges but keeps the node in place, which is
# how the explainer probes a word's contribution later on.
masked = mask_nodes(graph, {graph.index_of["apple"]})
print("after masking 'apple'")
print("  edges:", sorted(tuple(sorted(e)) for e in
                         (map(masked.words.__getitem__, pair)
                          for pair in masked.edge_set())))
print("  'apple' degree:", int(masked.degree[masked.index_of["apple"]]))

# A wider window connects more distant words.
wide = build_word_graph(tokenize("one two three four five"), k=4)
print()
print("'one two three four five' with k=4 has", wide.n_edges, "edges;",
      "with k=2 it has",
      build_word_graph(tokenize("one two three four five"), k=2).n_edges)
