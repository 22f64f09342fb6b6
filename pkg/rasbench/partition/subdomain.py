"""Overlapping subdomain problems and the communication structure between them."""
import logging
import warnings

import numpy as np
import pandas as pd
from scipy.sparse import csgraph, csr_matrix

from ..linalg import CsrMatrix

_log = logging.getLogger(__name__)

__all__ = [
    "OverlapSpec",
    "SubdomainProblem",
    "CommPattern",
    "ExchangePlan",
    "expand_overlap",
    "extract_subdomain",
    "decompose",
    "comm_pattern",
    "exchange_plan",
]


class OverlapSpec:
    """Number of adjacency-graph layers ``gamma`` added around each subdomain."""

    def __init__(self, gamma):
        gamma = int(gamma)
        if gamma < 0:
            raise ValueError("Overlap must be non-negative, got {}".format(gamma))
        self.gamma = gamma

    def __repr__(self):
        """Make string representation of object."""
        return "OverlapSpec(gamma={})".format(self.gamma)


def expand_overlap(m, pm, spec):
    """Compute the overlap set of every subdomain.

    ``O_p`` holds the indices reachable from the owned set ``S_p`` within ``gamma`` hops
    in the adjacency graph of ``m``, minus ``S_p`` itself.

    Parameters
    ----------
    m : CsrMatrix
    pm : PartitionMap
    spec : OverlapSpec or int

    Returns
    -------
    list of numpy.ndarray
        Ascending global indices of ``O_p`` for every subdomain.
    """
    if not isinstance(spec, OverlapSpec):
        spec = OverlapSpec(spec)
    if m.num_rows != m.num_cols:
        raise ValueError("Overlap needs a square matrix, got shape {}".format(m.shape))
    if m.num_rows != pm.n:
        raise ValueError("Matrix has {} rows but the partition covers {}".format(m.num_rows, pm.n))
    if spec.gamma == 0 and pm.num_subdomains > 1:
        warnings.warn("Overlap 0 with several subdomains degenerates to block Jacobi")

    # column j is one hop from row i when A[i, j] is stored
    forward = m.adjacency().transpose().tocsr().astype(np.int32)
    overlaps = []
    for p in range(pm.num_subdomains):
        owned = pm.owner == p
        reached = owned.copy()
        for _ in range(spec.gamma):
            grown = reached | (forward.dot(reached.astype(np.int32)) > 0)
            if np.array_equal(grown, reached):
                break
            reached = grown
        overlaps.append(np.flatnonzero(reached & ~owned))
    return overlaps


class SubdomainProblem:
    """Local data of one subdomain.

    Local unknowns are ``S_p`` (owned) and ``O_p`` (overlap) in ascending global order;
    ghosts are the indices outside the local set that local rows of ``A`` couple to.

    Attributes
    ----------
    subdomain_id : int
    local_matrix : CsrMatrix
        ``A`` restricted to local rows and columns.
    interface_matrix : CsrMatrix
        ``A`` restricted to local rows and ghost columns.
    local_to_global, ghost_to_global : numpy.ndarray
    ghost_owner : numpy.ndarray
        Owning subdomain of every ghost; ghost values are always pulled from the owner.
    local_owner : numpy.ndarray
        Owning subdomain of every local unknown.
    owned_mask : numpy.ndarray of bool
    local_rhs : numpy.ndarray
    """

    def __init__(
        self,
        subdomain_id,
        local_matrix,
        interface_matrix,
        local_to_global,
        ghost_to_global,
        ghost_owner,
        owned_mask,
        local_rhs,
        local_owner,
    ):
        self.subdomain_id = subdomain_id
        self.local_matrix = local_matrix
        self.interface_matrix = interface_matrix
        self.local_to_global = local_to_global
        self.ghost_to_global = ghost_to_global
        self.ghost_owner = ghost_owner
        self.owned_mask = owned_mask
        self.local_rhs = local_rhs
        self.local_owner = local_owner
        if not local_matrix.num_rows == interface_matrix.num_rows == len(local_to_global):
            raise ValueError("Local and interface matrices must share the local rows")
        if interface_matrix.num_cols != len(ghost_to_global):
            raise ValueError("Interface matrix needs one column per ghost")

    @property
    def num_local(self):
        """Local dimension ``|S_p| + |O_p|``."""
        return len(self.local_to_global)

    @property
    def num_owned(self):
        """Number of owned indices."""
        return int(self.owned_mask.sum())

    @property
    def num_ghosts(self):
        """Number of external interface points."""
        return len(self.ghost_to_global)

    def global_to_local(self, indices):
        """Local positions of global ``indices``; all of them must be local."""
        positions = np.searchsorted(self.local_to_global, indices)
        positions = np.minimum(positions, self.num_local - 1)
        if not np.array_equal(self.local_to_global[positions], indices):
            raise KeyError("Indices are not local to subdomain {}".format(self.subdomain_id))
        return positions

    def __repr__(self):
        """Make string representation of object."""
        return "SubdomainProblem(id={}, owned={}, local={}, ghosts={})".format(
            self.subdomain_id, self.num_owned, self.num_local, self.num_ghosts
        )


def extract_subdomain(m, b, pm, overlaps, p):
    """Assemble the local and interface matrices and index maps of subdomain ``p``.

    Parameters
    ----------
    m : CsrMatrix
    b : numpy.ndarray
        Global right hand side.
    pm : PartitionMap
    overlaps : list of numpy.ndarray
        Result of `expand_overlap` on the same ``m`` and ``pm``.
    p : int

    Returns
    -------
    SubdomainProblem
    """
    local = np.union1d(pm.owned(p), overlaps[p])
    coupled = np.unique(m.scipy[local, :].indices)
    ghosts = np.setdiff1d(coupled, local, assume_unique=True)
    return SubdomainProblem(
        subdomain_id=p,
        local_matrix=m.submatrix(local, local),
        interface_matrix=m.submatrix(local, ghosts),
        local_to_global=local,
        ghost_to_global=ghosts,
        ghost_owner=pm.owner[ghosts],
        owned_mask=pm.owner[local] == p,
        local_rhs=np.asarray(b, dtype=np.float64)[local].copy(),
        local_owner=pm.owner[local],
    )


def decompose(m, b, pm, gamma):
    """Extract every subdomain problem for overlap ``gamma``."""
    overlaps = expand_overlap(m, pm, gamma)
    return [extract_subdomain(m, b, pm, overlaps, p) for p in range(pm.num_subdomains)]


class CommPattern:
    """Receive counts between subdomains.

    ``counts[p, q]`` is the number of ghost values subdomain ``p`` receives from ``q``.
    """

    def __init__(self, counts):
        counts = np.asarray(counts, dtype=np.int64)
        if counts.ndim != 2 or counts.shape[0] != counts.shape[1]:
            raise ValueError("Receive counts must be a square matrix, got {}".format(counts.shape))
        self.counts = counts

    @property
    def num_subdomains(self):
        """Number of subdomains ``P``."""
        return self.counts.shape[0]

    def senders(self, p):
        """Subdomains ``p`` receives ghost values from."""
        return np.flatnonzero(self.counts[p] > 0)

    def receivers(self, p):
        """Subdomains that receive ghost values from ``p``."""
        return np.flatnonzero(self.counts[:, p] > 0)

    def neighbors(self, p):
        """Subdomains coupled to ``p`` in either direction."""
        return np.union1d(self.senders(p), self.receivers(p))

    def max_neighbors(self):
        """Largest neighbor count over all subdomains."""
        return max(len(self.neighbors(p)) for p in range(self.num_subdomains))

    def hop_distances(self):
        """Hop distance between every pair of subdomains, ``inf`` when unreachable."""
        graph = csr_matrix((self.counts > 0) | (self.counts.T > 0))
        return csgraph.shortest_path(graph, directed=False, unweighted=True)

    def diameter(self):
        """Largest finite hop distance between two subdomains.

        This is the number of exchanges a value needs to cross the whole decomposition.
        """
        distances = self.hop_distances()
        return int(distances[np.isfinite(distances)].max())

    def to_dataframe(self):
        """Counts labelled by receiver (rows) and sender (columns)."""
        ids = pd.Index(np.arange(self.num_subdomains), name="receiver")
        return pd.DataFrame(self.counts, index=ids, columns=ids.rename("sender"))

    def to_csv(self, path):
        """Write the ``P x P`` counts as header-less CSV, one row per receiver."""
        self.to_dataframe().to_csv(str(path), header=False, index=False)

    def __repr__(self):
        """Make string representation of object."""
        return "CommPattern(P={}, max_neighbors={})".format(
            self.num_subdomains, self.max_neighbors()
        )


def comm_pattern(subproblems):
    """Count the ghost values each subdomain receives from every other one.

    Parameters
    ----------
    subproblems : list of SubdomainProblem

    Returns
    -------
    CommPattern
    """
    size = len(subproblems)
    counts = np.zeros((size, size), dtype=np.int64)
    for problem in subproblems:
        counts[problem.subdomain_id] = np.bincount(problem.ghost_owner, minlength=size)
    return CommPattern(counts)


class ExchangePlan:
    """Pack and unpack positions for every ordered pair of communicating subdomains.

    A payload from ``q`` to ``p`` carries the values ``q`` owns among ``p``'s ghosts,
    followed by the values ``q`` owns among ``p``'s overlap entries. The second part lets
    ``p`` test convergence against the owners' values instead of its own overlap copies.

    Attributes
    ----------
    pattern : CommPattern
        Ghost receive counts; the overlap part does not contribute.
    send_positions : list of dict
        ``send_positions[q][p]``: positions in ``q``'s local vector packed for ``p``.
    recv_positions : list of dict
        ``recv_positions[p][q]``: positions in ``p``'s ghost vector filled from ``q``.
    refresh_positions : list of dict
        ``refresh_positions[p][q]``: positions in ``p``'s local vector owned by ``q``.
    """

    def __init__(self, pattern, send_positions, recv_positions, refresh_positions=None):
        self.pattern = pattern
        self.send_positions = send_positions
        self.recv_positions = recv_positions
        if refresh_positions is None:
            refresh_positions = [dict() for _ in recv_positions]
        self.refresh_positions = refresh_positions

    @property
    def num_subdomains(self):
        """Number of subdomains ``P``."""
        return self.pattern.num_subdomains

    def senders(self, p):
        """Subdomains that put a payload for ``p``."""
        return sorted(set(self.recv_positions[p]) | set(self.refresh_positions[p]))

    def receivers(self, p):
        """Subdomains ``p`` puts a payload for."""
        return sorted(self.send_positions[p])

    def _split(self, receiver, sender):
        return len(self.recv_positions[receiver].get(sender, ()))

    def payload_length(self, sender, receiver):
        """Length of the payload ``sender`` puts into ``receiver``'s window."""
        return self._split(receiver, sender) + len(
            self.refresh_positions[receiver].get(sender, ())
        )

    def pack(self, p, x_local):
        """Gather the owned values every receiver of ``p`` needs."""
        return {q: x_local[positions] for q, positions in self.send_positions[p].items()}

    def unpack(self, p, ghost_values, sender, payload, local_values=None):
        """Scatter a payload received from ``sender`` into ``p``'s vectors.

        The ghost part goes to ``ghost_values``; the overlap part goes to
        ``local_values`` when given and is dropped otherwise.
        """
        split = self._split(p, sender)
        if split:
            ghost_values[self.recv_positions[p][sender]] = payload[:split]
        if local_values is not None and sender in self.refresh_positions[p]:
            local_values[self.refresh_positions[p][sender]] = payload[split:]


def exchange_plan(subproblems):
    """Build the `ExchangePlan` of a consistent family of subdomain problems."""
    size = len(subproblems)
    empty = np.zeros(0, dtype=np.int64)
    ghost_send = [dict() for _ in range(size)]
    refresh_send = [dict() for _ in range(size)]
    recv_positions = [dict() for _ in range(size)]
    refresh_positions = [dict() for _ in range(size)]
    for problem in subproblems:
        p = problem.subdomain_id
        for q in np.unique(problem.ghost_owner):
            q = int(q)
            positions = np.flatnonzero(problem.ghost_owner == q)
            recv_positions[p][q] = positions
            ghost_send[q][p] = subproblems[q].global_to_local(problem.ghost_to_global[positions])
        overlap = np.flatnonzero(~problem.owned_mask)
        overlap_owner = problem.local_owner[overlap]
        for q in np.unique(overlap_owner):
            q = int(q)
            positions = overlap[overlap_owner == q]
            refresh_positions[p][q] = positions
            refresh_send[q][p] = subproblems[q].global_to_local(problem.local_to_global[positions])
    send_positions = [
        {
            p: np.concatenate([ghost_send[q].get(p, empty), refresh_send[q].get(p, empty)])
            for p in sorted(set(ghost_send[q]) | set(refresh_send[q]))
        }
        for q in range(size)
    ]
    return ExchangePlan(
        comm_pattern(subproblems), send_positions, recv_positions, refresh_positions
    )
