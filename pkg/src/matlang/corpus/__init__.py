"""Graph ingestion, generators and the example-pair corpus."""
from .families import (complement, complete, complete_bipartite, cycle, disjoint_union, empty, family_graph, path,
                       petersen, rook, shrikhande, srg_parameters, star, union_all)
from .graph6 import encode_graph6, parse_edge_json, parse_graph6, read_graph_file, write_graph_file
from .iso import are_isomorphic, find_isomorphism, neighbourhood_certificate, nonisomorphism_reason
from .paper import CorpusEntry, corpus_graphs, load_paper_corpus, printed_matrices, verify_corpus

__all__ = ["complement", "complete", "complete_bipartite", "cycle", "disjoint_union", "empty", "family_graph", "path",
           "petersen", "rook", "shrikhande", "srg_parameters", "star", "union_all", "encode_graph6",
           "parse_edge_json", "parse_graph6", "read_graph_file", "write_graph_file", "are_isomorphic",
           "find_isomorphism", "neighbourhood_certificate", "nonisomorphism_reason", "CorpusEntry", "corpus_graphs",
           "load_paper_corpus", "printed_matrices", "verify_corpus"]
