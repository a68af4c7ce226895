"""Compilation of word-form lexica into a minimal acyclic automaton index.

The index is a ranked DAFSA: the automaton stores only the key set (the
distinct word forms), and every accepted key is addressed by its
lexicographic rank.  Ranks index an offset table pointing into a payload
pool that holds the serialized analyses.  Keeping payloads out of the
states preserves suffix sharing, which is where the compression comes
from; identical payload records are stored once and shared across ranks.

Construction is the classic incremental minimal-DAFSA algorithm over
sorted input (register of right-language-equivalent states), so compile
time is linear in total key length and the result is minimal by
construction.  A lookup visits at most len(key)+1 states regardless of
how many keys the index holds.

Binary layout (little-endian throughout):

    bytes 0-3   magic "LXC1"
    bytes 4-7   version (1)
    4 x u32     state_count, transition_count, key_count, payload_pool_length
    states      per state: final u8, accepted_count u32,
                first_transition u32, transition_count u16   (state 0 = root)
    transitions per transition: label u32 (Unicode scalar), target u32
    offsets     key_count x u32 into the pool
    pool        raw bytes; per record: analysis count u16, then per
                analysis a u32 length prefix and UTF-8 analysis text
                ("lemma.pos+name=value..." as in the DELA formats)
"""

import struct
from bisect import bisect_left
from dataclasses import dataclass

from . import dela
from .model import Lexicon, LexiconError

MAGIC = b"LXC1"
VERSION = 1

_HEADER = struct.Struct("<4sI4I")
_STATE = struct.Struct("<BIIH")
_TRANSITION = struct.Struct("<II")
_OFFSET = struct.Struct("<I")
_COUNT16 = struct.Struct("<H")
_LEN32 = struct.Struct("<I")


class IndexFormatError(LexiconError):
    pass


@dataclass
class CompiledLexicon:
    """Flattened automaton plus rank-addressed payloads.

    Parallel per-state arrays; a state's outgoing transitions occupy
    labels/targets[first_transitions[s] : first_transitions[s] +
    transition_counts[s]], sorted by label.  accepted_counts[s] is the
    number of accepted strings in the sub-automaton rooted at s.
    """

    finals: list
    accepted_counts: list
    first_transitions: list
    transition_counts: list
    labels: list
    targets: list
    payload_offsets: list
    payload_pool: bytes

    @property
    def state_count(self) -> int:
        return len(self.finals)

    @property
    def transition_count(self) -> int:
        return len(self.labels)

    @property
    def key_count(self) -> int:
        return len(self.payload_offsets)


@dataclass(frozen=True)
class CompiledStats:
    state_count: int
    transition_count: int
    serialized_bytes: int
    key_count: int
    analysis_count: int


class _Node:
    __slots__ = ("final", "children")

    def __init__(self):
        self.final = False
        self.children: list = []  # (label char, _Node), labels strictly increasing


def _build_dafsa(keys: list) -> _Node:
    """Incremental minimal DAFSA over lexicographically sorted keys."""
    root = _Node()
    register: dict = {}
    # unchecked path from the root for the previous key: (parent, char, child)
    path: list = []
    previous = ""

    def minimize(depth: int):
        while len(path) > depth:
            parent, ch, child = path.pop()
            signature = (
                child.final,
                tuple((c, id(n)) for c, n in child.children),
            )
            registered = register.get(signature)
            if registered is not None:
                parent.children[-1] = (ch, registered)
            else:
                register[signature] = child

    for key in keys:
        common = 0
        limit = min(len(key), len(previous))
        while common < limit and key[common] == previous[common]:
            common += 1
        minimize(common)
        node = path[-1][2] if path else root
        for ch in key[common:]:
            new = _Node()
            node.children.append((ch, new))
            path.append((node, ch, new))
            node = new
        node.final = True
        previous = key
    minimize(0)
    return root


def _freeze(root: _Node) -> tuple:
    """Assign dense ids (root = 0, breadth-first) and flatten the arrays."""
    order = [root]
    index = {id(root): 0}
    head = 0
    while head < len(order):
        node = order[head]
        head += 1
        for _, child in node.children:
            if id(child) not in index:
                index[id(child)] = len(order)
                order.append(child)

    finals = [node.final for node in order]
    accepted = [0] * len(order)
    # Accepted counts need a post-order pass: BFS order is not topological
    # for a DAG with cross edges.  Children are re-pushed above their
    # parent's post-visit entry, so they are always computed first; the
    # done flag keeps shared states from being computed twice.
    done = [False] * len(order)
    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        i = index[id(node)]
        if done[i]:
            continue
        if expanded:
            accepted[i] = (1 if node.final else 0) + sum(
                accepted[index[id(child)]] for _, child in node.children
            )
            done[i] = True
            continue
        stack.append((node, True))
        stack.extend(
            (child, False)
            for _, child in node.children
            if not done[index[id(child)]]
        )

    first = []
    counts = []
    labels = []
    targets = []
    for node in order:
        first.append(len(labels))
        counts.append(len(node.children))
        for ch, child in node.children:
            labels.append(ord(ch))
            targets.append(index[id(child)])
    return finals, accepted, first, counts, labels, targets


def _analysis_key(entry) -> tuple:
    feats = dela._feature_text(entry.features)
    return (
        entry.form.encode("utf-8"),
        entry.lemma.encode("utf-8"),
        entry.pos.name.encode("utf-8"),
        feats.encode("utf-8"),
    )


def compile(lexicon: Lexicon) -> CompiledLexicon:
    """Compile a word-form lexicon; a pure function of the form->analyses map.

    Entries are sorted internally, so caller order never changes the result;
    duplicate analyses of one form collapse.
    """
    if lexicon.kind != "wordform":
        raise LexiconError(f"cannot compile a {lexicon.kind} lexicon")
    analyses: dict = {}
    for entry in sorted(lexicon.entries, key=_analysis_key):
        text = dela.format_analysis(entry.lemma, entry.pos, entry.features)
        per_form = analyses.setdefault(entry.form, [])
        if text not in per_form:
            per_form.append(text)

    keys = sorted(analyses)
    root = _build_dafsa(keys)
    finals, accepted, first, counts, labels, targets = _freeze(root)

    pool = bytearray()
    offsets = []
    record_offsets: dict = {}
    for key in keys:
        texts = analyses[key]
        if len(texts) > 0xFFFF:
            raise LexiconError(f"form {key!r} has too many analyses")
        record = bytearray(_COUNT16.pack(len(texts)))
        for text in texts:
            raw = text.encode("utf-8")
            record += _LEN32.pack(len(raw)) + raw
        record = bytes(record)
        offset = record_offsets.get(record)
        if offset is None:
            offset = len(pool)
            record_offsets[record] = offset
            pool += record
        offsets.append(offset)

    return CompiledLexicon(
        finals, accepted, first, counts, labels, targets, offsets, bytes(pool)
    )


def rank_lookup(compiled: CompiledLexicon, key: str, counter: list | None = None) -> int | None:
    """Lexicographic rank of an accepted key, or None.

    ``counter``, when given, accumulates the number of state visits in its
    first slot (at most len(key)+1 per call).
    """
    finals = compiled.finals
    first = compiled.first_transitions
    counts = compiled.transition_counts
    labels = compiled.labels
    targets = compiled.targets
    accepted = compiled.accepted_counts
    state = 0
    visits = 1
    rank = 0
    for ch in key:
        code = ord(ch)
        if finals[state]:
            rank += 1
        lo = first[state]
        hi = lo + counts[state]
        i = bisect_left(labels, code, lo, hi)
        if i == hi or labels[i] != code:
            if counter is not None:
                counter[0] += visits
            return None
        for j in range(lo, i):
            rank += accepted[targets[j]]
        state = targets[i]
        visits += 1
    if counter is not None:
        counter[0] += visits
    return rank if finals[state] else None


def analyses_at(compiled: CompiledLexicon, rank: int) -> list:
    """Decode the payload record for a rank into (lemma, pos, features) triples."""
    pool = compiled.payload_pool
    offset = compiled.payload_offsets[rank]
    (count,) = _COUNT16.unpack_from(pool, offset)
    offset += _COUNT16.size
    out = []
    for _ in range(count):
        (length,) = _LEN32.unpack_from(pool, offset)
        offset += _LEN32.size
        text = pool[offset : offset + length].decode("utf-8")
        offset += length
        out.append(dela.parse_analysis(text))
    return out


def lookup_analyses(compiled: CompiledLexicon, form: str) -> list:
    rank = rank_lookup(compiled, form)
    return [] if rank is None else analyses_at(compiled, rank)


def write_binary(compiled: CompiledLexicon) -> bytes:
    out = bytearray(
        _HEADER.pack(
            MAGIC,
            VERSION,
            compiled.state_count,
            compiled.transition_count,
            compiled.key_count,
            len(compiled.payload_pool),
        )
    )
    pack_state = _STATE.pack
    for s in range(compiled.state_count):
        out += pack_state(
            1 if compiled.finals[s] else 0,
            compiled.accepted_counts[s],
            compiled.first_transitions[s],
            compiled.transition_counts[s],
        )
    pack_transition = _TRANSITION.pack
    for label, target in zip(compiled.labels, compiled.targets):
        out += pack_transition(label, target)
    for offset in compiled.payload_offsets:
        out += _OFFSET.pack(offset)
    out += compiled.payload_pool
    return bytes(out)


def read_binary(data: bytes) -> CompiledLexicon:
    if len(data) < _HEADER.size:
        raise IndexFormatError("truncated file: missing header")
    magic, version, state_count, transition_count, key_count, pool_length = _HEADER.unpack_from(
        data, 0
    )
    if magic != MAGIC:
        raise IndexFormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise IndexFormatError(f"unsupported version {version}")
    expected = (
        _HEADER.size
        + state_count * _STATE.size
        + transition_count * _TRANSITION.size
        + key_count * _OFFSET.size
        + pool_length
    )
    if len(data) < expected:
        raise IndexFormatError(f"truncated file: expected {expected} bytes, got {len(data)}")
    if len(data) > expected:
        raise IndexFormatError(f"trailing data after {expected} bytes")
    if state_count == 0:
        raise IndexFormatError("state count must be at least 1 (the root)")

    pos = _HEADER.size
    finals = []
    accepted = []
    first = []
    counts = []
    for flag, acc, fst, cnt in _STATE.iter_unpack(
        data[pos : pos + state_count * _STATE.size]
    ):
        if flag not in (0, 1):
            raise IndexFormatError(f"invalid final flag {flag}")
        finals.append(flag == 1)
        accepted.append(acc)
        first.append(fst)
        counts.append(cnt)
    pos += state_count * _STATE.size

    labels = []
    targets = []
    for label, target in _TRANSITION.iter_unpack(
        data[pos : pos + transition_count * _TRANSITION.size]
    ):
        if target >= state_count:
            raise IndexFormatError(f"transition target {target} out of bounds")
        labels.append(label)
        targets.append(target)
    pos += transition_count * _TRANSITION.size

    for s in range(state_count):
        if first[s] + counts[s] > transition_count:
            raise IndexFormatError(f"state {s} transitions out of bounds")

    offsets = []
    for (offset,) in _OFFSET.iter_unpack(data[pos : pos + key_count * _OFFSET.size]):
        if offset + _COUNT16.size > pool_length:
            raise IndexFormatError(f"payload offset {offset} out of bounds")
        offsets.append(offset)
    pos += key_count * _OFFSET.size

    pool = data[pos : pos + pool_length]
    if accepted[0] != key_count:
        raise IndexFormatError(
            f"root accepts {accepted[0]} keys but the index lists {key_count}"
        )
    return CompiledLexicon(finals, accepted, first, counts, labels, targets, offsets, pool)


def stats(compiled: CompiledLexicon) -> CompiledStats:
    analysis_count = 0
    for offset in compiled.payload_offsets:
        (count,) = _COUNT16.unpack_from(compiled.payload_pool, offset)
        analysis_count += count
    return CompiledStats(
        state_count=compiled.state_count,
        transition_count=compiled.transition_count,
        serialized_bytes=len(write_binary(compiled)),
        key_count=compiled.key_count,
        analysis_count=analysis_count,
    )
