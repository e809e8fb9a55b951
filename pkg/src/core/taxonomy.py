"""In-memory taxonomy graph.

Concepts are kept in one node universe; a concept becomes an *individual*
only through its incoming INSTANCE_OF edges.  IS_A edges must stay acyclic.
Every set-valued query returns concept ids in canonical order (by name) so
reports built on top of it are reproducible.

A built taxonomy is only read by the checkers; construction is expected to
happen from a single writer.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import (
    CycleError,
    DuplicateNameError,
    InstanceAsClassError,
    InvalidEdgeError,
    TaxonomyError,
    UnknownConceptError,
)


class EdgeKind(Enum):
    """Edge types; values are the tokens used by the native file format."""
    IS_A = "ISA"
    INSTANCE_OF = "INST"


@dataclass(frozen=True)
class Concept:
    """One named concept (a synset, after normalization)."""

    id: str
    name: str
    lemmas: Tuple[str, ...]
    gloss: Optional[str] = None
    topic: Optional[str] = None
    external_id: Optional[str] = None


@dataclass(frozen=True)
class Edge:
    child: str
    parent: str
    kind: EdgeKind


class Taxonomy:
    """Directed acyclic taxonomy with IS_A and INSTANCE_OF edges."""

    def __init__(self) -> None:
        self._concepts: Dict[str, Concept] = {}
        self._ids_by_name: Dict[str, str] = {}
        self._parents: Dict[str, Dict[EdgeKind, Set[str]]] = {}
        self._children: Dict[str, Dict[EdgeKind, Set[str]]] = {}
        self._next_id = 1
        # concept id -> ids of all IS_A ancestors; dropped on every mutation
        self._ancestor_cache: Dict[str, FrozenSet[str]] = {}

    # Construction ---------------------------------------------------------------
    def add_concept(
        self,
        name: str,
        lemmas: Sequence[str],
        gloss: Optional[str] = None,
        topic: Optional[str] = None,
        external_id: Optional[str] = None,
    ) -> str:
        """Register a concept and return its fresh id."""
        if not name or not name.strip():
            raise TaxonomyError("concept name must be non-empty")
        if name in self._ids_by_name:
            raise DuplicateNameError(name)
        lemma_tuple = tuple(lemmas)
        if not lemma_tuple:
            raise TaxonomyError(f"concept {name} needs at least one lemma")

        cid = f"c{self._next_id}"
        self._next_id += 1
        self._concepts[cid] = Concept(
            id=cid,
            name=name,
            lemmas=lemma_tuple,
            gloss=gloss or None,
            topic=topic or None,
            external_id=external_id or None,
        )
        self._ids_by_name[name] = cid
        self._parents[cid] = {kind: set() for kind in EdgeKind}
        self._children[cid] = {kind: set() for kind in EdgeKind}
        self._ancestor_cache.clear()
        return cid

    def add_edge(self, child: str, parent: str, kind: EdgeKind = EdgeKind.IS_A) -> None:
        """Add ``child -> parent``; keeps the DAG and individual invariants."""
        self._require(child)
        self._require(parent)
        if child == parent:
            raise InvalidEdgeError(f"self edge on {self._concepts[child].name}")
        if parent in self._parents[child][kind]:
            return

        child_name = self._concepts[child].name
        parent_name = self._concepts[parent].name
        if self.is_individual(parent):
            raise InstanceAsClassError(
                f"{parent_name} is an individual and cannot be the parent of {child_name}"
            )
        if kind is EdgeKind.IS_A:
            if self.is_individual(child):
                raise InstanceAsClassError(
                    f"{child_name} is an individual and cannot be subsumed by {parent_name}"
                )
            if child in self._closure(parent):
                raise CycleError(child_name, parent_name)
        else:
            if self._parents[child][EdgeKind.IS_A] or any(self._children[child].values()):
                raise InstanceAsClassError(
                    f"{child_name} already takes part in IS_A edges and cannot become an instance"
                )

        self._parents[child][kind].add(parent)
        self._children[parent][kind].add(child)
        self._ancestor_cache.clear()

    # Lookup ---------------------------------------------------------------------
    def __len__(self) -> int:
        return len(self._concepts)

    def __contains__(self, name: object) -> bool:
        return name in self._ids_by_name

    def has_name(self, name: str) -> bool:
        return name in self._ids_by_name

    def id_of(self, name: str) -> str:
        try:
            return self._ids_by_name[name]
        except KeyError:
            raise UnknownConceptError(name) from None

    def concept(self, cid: str) -> Concept:
        self._require(cid)
        return self._concepts[cid]

    def name_of(self, cid: str) -> str:
        return self.concept(cid).name

    def concepts(self) -> List[Concept]:
        return sorted(self._concepts.values(), key=lambda c: c.name)

    def edges(self) -> List[Edge]:
        out = [
            Edge(child, parent, kind)
            for child, by_kind in self._parents.items()
            for kind, parents in by_kind.items()
            for parent in parents
        ]
        out.sort(key=lambda e: (self._concepts[e.child].name, self._concepts[e.parent].name, e.kind.value))
        return out

    def roots(self) -> List[str]:
        return self._sorted(
            cid for cid, by_kind in self._parents.items() if not any(by_kind.values())
        )

    def parents(self, cid: str, kind: Optional[EdgeKind] = EdgeKind.IS_A) -> List[str]:
        self._require(cid)
        return self._sorted(self._edge_ends(self._parents[cid], kind))

    def children(self, cid: str, kind: Optional[EdgeKind] = EdgeKind.IS_A) -> List[str]:
        self._require(cid)
        return self._sorted(self._edge_ends(self._children[cid], kind))

    def is_individual(self, cid: str) -> bool:
        return bool(self._parents[cid][EdgeKind.INSTANCE_OF])

    # Closure queries ------------------------------------------------------------
    def ancestors(self, cid: str) -> List[str]:
        """All concepts reachable through one or more IS_A edges (self excluded)."""
        self._require(cid)
        return self._sorted(self._closure(cid))

    def ancestor_set(self, cid: str) -> FrozenSet[str]:
        self._require(cid)
        return self._closure(cid)

    def descendants(self, cid: str) -> List[str]:
        """Concepts below ``cid`` through IS_A edges."""
        self._require(cid)
        seen: Set[str] = set()
        queue = deque(self._children[cid][EdgeKind.IS_A])
        while queue:
            node = queue.popleft()
            if node in seen:
                continue
            seen.add(node)
            queue.extend(self._children[node][EdgeKind.IS_A])
        return self._sorted(seen)

    def shortest_path(self, child: str, ancestor: str) -> List[str]:
        """Shortest IS_A chain from ``child`` up to ``ancestor`` as a list of ids.

        BFS expands parents in name order, so among equally short chains the
        one that is smallest hop-by-hop wins.
        """
        self._require(ancestor)
        return self.witness_paths(child).get(ancestor, [])

    def witness_paths(self, child: str) -> Dict[str, List[str]]:
        """Shortest IS_A chain from ``child`` to each of its ancestors (and itself)."""
        self._require(child)
        previous: Dict[str, Optional[str]] = {child: None}
        queue = deque([child])
        while queue:
            node = queue.popleft()
            for parent in self.parents(node):
                if parent not in previous:
                    previous[parent] = node
                    queue.append(parent)

        paths: Dict[str, List[str]] = {}
        for target in previous:
            path = []
            step: Optional[str] = target
            while step is not None:
                path.append(step)
                step = previous[step]
            path.reverse()
            paths[target] = path
        return paths

    # Internals ------------------------------------------------------------------
    def _require(self, cid: str) -> None:
        if cid not in self._concepts:
            raise UnknownConceptError(cid)

    def _sorted(self, ids: Iterable[str]) -> List[str]:
        return sorted(ids, key=lambda cid: self._concepts[cid].name)

    @staticmethod
    def _edge_ends(by_kind: Dict[EdgeKind, Set[str]], kind: Optional[EdgeKind]) -> Set[str]:
        if kind is not None:
            return by_kind[kind]
        out: Set[str] = set()
        for ends in by_kind.values():
            out |= ends
        return out

    def _closure(self, cid: str) -> FrozenSet[str]:
        cache = self._ancestor_cache
        if cid in cache:
            return cache[cid]
        stack = [cid]
        while stack:
            node = stack[-1]
            if node in cache:
                stack.pop()
                continue
            parents = self._parents[node][EdgeKind.IS_A]
            pending = [p for p in parents if p not in cache]
            if pending:
                stack.extend(pending)
                continue
            acc: Set[str] = set(parents)
            for parent in parents:
                acc |= cache[parent]
            cache[node] = frozenset(acc)
            stack.pop()
        return cache[cid]
