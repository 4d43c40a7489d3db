from .hypergraph import Hypergraph, read_hypergraph, write_hypergraph, degree_count, degree_table
from .symmetric import SymmetricTensor, symmetrize, read_tensor, write_tensor
from .adjacency import adjacency_tensor, hypergraph_from_tensor, normalize
from .action import s_action_apply, contract
