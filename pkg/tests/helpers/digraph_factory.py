"""テスト用 digraph 生成ファクトリ。

ラベル付き digraph、シード付きランダム digraph、有向閉路を簡単に作る。
乱数は SplitMix64 (本体と同じ) を使うので結果は完全に再現可能。
"""

from __future__ import annotations

from src.core.digraph import BipartiteTournament, Digraph, validate_bipartite_tournament
from src.generators.prng import SplitMix64


def make_digraph(labels: list[str], arcs: list[tuple[str, str]]) -> Digraph:
    """ラベル列とラベル対の arc 列から Digraph を作る。"""
    index = {label: i for i, label in enumerate(labels)}
    return Digraph.from_arcs(len(labels), [(index[u], index[v]) for u, v in arcs], labels)


def make_bipartite(
    part1: list[str], part2: list[str], arcs: list[tuple[str, str]]
) -> BipartiteTournament:
    """part1 → part2 の順にラベルを並べて検証済み bipartite tournament を作る。"""
    d = make_digraph(part1 + part2, arcs)
    n1 = len(part1)
    return validate_bipartite_tournament(d, range(n1), range(n1, d.n))


def make_cycle(n: int) -> Digraph:
    """0 → 1 → ... → n-1 → 0 の有向閉路。"""
    return Digraph.from_arcs(n, [(i, (i + 1) % n) for i in range(n)])


def random_digraph(n: int, seed: int, density_per_mille: int = 350) -> Digraph:
    """各 ordered pair (u≠v) を確率 density/1000 で arc にする。"""
    rng = SplitMix64(seed)
    arcs = [
        (u, v)
        for u in range(n)
        for v in range(n)
        if u != v and rng.bounded(1000) < density_per_mille
    ]
    return Digraph.from_arcs(n, arcs)


def random_digraphs(count: int, max_n: int, seed: int = 0) -> list[Digraph]:
    """頂点数 1..max_n、密度ばらばらの digraph を count 個。"""
    rng = SplitMix64(seed)
    out = []
    for i in range(count):
        n = 1 + rng.bounded(max_n)
        density = 100 + rng.bounded(600)
        out.append(random_digraph(n, seed * 100_003 + i, density))
    return out
