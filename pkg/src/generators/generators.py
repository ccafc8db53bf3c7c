"""Generators: seed 付き乱数生成と全列挙。

各インスタンスは orientation mask で識別する。bit k は (part1 index,
part2 index) 順で k 番目の対を表し、1 なら part1 → part2。
Part1 は x1..x{n1}、part2 は y1..y{n2}。
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from src.core.digraph import BipartiteTournament
from src.core.errors import InfeasibleParts, InvalidGenSpec, RetriesExhausted, TooLarge
from src.generators.prng import SplitMix64
from src.sinks.sink_analysis import sinks
from src.utils.config_loader import load_settings
from src.utils.logger import setup_logger

logger = setup_logger("generators")

UNIFORM = "uniform"
ACYCLIC = "acyclic"
SINKLESS = "sinkless"
MODES = (UNIFORM, ACYCLIC, SINKLESS)

DEFAULT_SINKLESS_RETRIES = 10000
DEFAULT_MAX_CROSS_PAIRS = 20


@dataclass(frozen=True)
class GenSpec:
    n1: int
    n2: int
    seed: int
    mode: str = UNIFORM

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1:
            raise InvalidGenSpec(f"part sizes must be >= 1, got ({self.n1}, {self.n2})")
        if self.mode not in MODES:
            raise InvalidGenSpec(f"mode must be one of {', '.join(MODES)}, got {self.mode!r}")

    def to_dict(self) -> dict:
        return {"n1": self.n1, "n2": self.n2, "seed": self.seed, "mode": self.mode}


def _generator_settings(settings: dict | None) -> dict:
    if settings is None:
        settings = load_settings()
    return settings.get("generators", {}) or {}


def _uniform_mask(rng: SplitMix64, pairs: int) -> int:
    mask = 0
    for k in range(pairs):
        mask |= rng.coin() << k
    return mask


def random_bipartite_tournament(spec: GenSpec) -> BipartiteTournament:
    """One independent fair coin per cross pair, in mask order."""
    rng = SplitMix64(spec.seed)
    return BipartiteTournament.from_orientation(spec.n1, spec.n2, _uniform_mask(rng, spec.n1 * spec.n2))


def random_acyclic_bipartite_tournament(spec: GenSpec) -> BipartiteTournament:
    """Orient every cross pair along a uniformly shuffled vertex order."""
    rng = SplitMix64(spec.seed)
    n1, n2 = spec.n1, spec.n2
    order = list(range(n1 + n2))
    rng.shuffle(order)
    position = {v: i for i, v in enumerate(order)}
    mask = 0
    k = 0
    for u in range(n1):
        for v in range(n1, n1 + n2):
            if position[u] < position[v]:
                mask |= 1 << k
            k += 1
    return BipartiteTournament.from_orientation(n1, n2, mask)


def random_sinkless_bipartite_tournament(
    spec: GenSpec,
    max_retries: int | None = None,
    settings: dict | None = None,
) -> BipartiteTournament:
    """Rejection-sample uniform orientations until no vertex is a sink.

    One SplitMix64 stream is shared by all attempts.

    Raises:
        InfeasibleParts: a part has a single vertex.
        RetriesExhausted: no sinkless draw within ``max_retries`` attempts.
    """
    if min(spec.n1, spec.n2) < 2:
        raise InfeasibleParts(spec.n1, spec.n2)
    if max_retries is None:
        max_retries = int(_generator_settings(settings).get("sinkless_max_retries", DEFAULT_SINKLESS_RETRIES))

    rng = SplitMix64(spec.seed)
    pairs = spec.n1 * spec.n2
    for attempt in range(1, max_retries + 1):
        bt = BipartiteTournament.from_orientation(spec.n1, spec.n2, _uniform_mask(rng, pairs))
        if not sinks(bt.digraph):
            if attempt > 1:
                logger.debug("Sinkless draw for %s after %d attempts", spec.to_dict(), attempt)
            return bt
    logger.warning("Sinkless sampling gave up after %d attempts for %s", max_retries, spec.to_dict())
    raise RetriesExhausted("sinkless sampling", max_retries)


def generate(spec: GenSpec, settings: dict | None = None) -> BipartiteTournament:
    if spec.mode == ACYCLIC:
        return random_acyclic_bipartite_tournament(spec)
    if spec.mode == SINKLESS:
        return random_sinkless_bipartite_tournament(spec, settings=settings)
    return random_bipartite_tournament(spec)


def enumeration_size(n1: int, n2: int, max_cross_pairs: int | None = None, settings: dict | None = None) -> int:
    """2^{n1·n2}, or TooLarge when n1·n2 exceeds the cap."""
    if n1 < 1 or n2 < 1:
        raise InvalidGenSpec(f"part sizes must be >= 1, got ({n1}, {n2})")
    if max_cross_pairs is None:
        max_cross_pairs = int(_generator_settings(settings).get("enumerate_max_cross_pairs", DEFAULT_MAX_CROSS_PAIRS))
    if n1 * n2 > max_cross_pairs:
        raise TooLarge(n1, n2, max_cross_pairs)
    return 1 << (n1 * n2)


def enumerate_all(
    n1: int,
    n2: int,
    start: int = 0,
    stop: int | None = None,
    max_cross_pairs: int | None = None,
    settings: dict | None = None,
) -> Iterator[BipartiteTournament]:
    """Every orientation with mask in [start, stop), in mask order.

    Raises:
        TooLarge: n1·n2 above the configured cap.
    """
    total = enumeration_size(n1, n2, max_cross_pairs, settings)
    stop = total if stop is None else min(stop, total)
    for mask in range(max(0, start), stop):
        yield BipartiteTournament.from_orientation(n1, n2, mask)
