"""Randomized verification suites.

Each suite draws seeded random instances (base, subbase selection,
factors), conditions them on the hypothesis of one structural theorem,
builds the amalgam, and checks the conclusion plus the basic structural
facts.  Nothing here proves anything in general; a suite passing means
the statement survived a few hundred adversarially random finite
instances with every intermediate claim machine-checked.

Suites are deterministic: every random draw flows from one SplitMix64
stream derived from the config seed and the suite name, with a spawned
substream per trial, so identical configs give identical reports apart
from measured wall time.  Instances that blow a size or open-family
budget are counted as skips, never silently dropped; a failed check is
recorded with a replayable JSON serialization of the instance.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .amalgam import (
    AmalgamSpace,
    SubbaseSel,
    build_amalgam,
    check_structural_facts,
    embed_base,
    embed_factor,
    quotient_presentation,
    reduced_amalgam,
)
from .bitsets import bits
from .constructions import (
    connectedness_chain,
    connectedness_with_witness,
    connectedness_without_full_member,
    connectify,
    discrete,
    homogeneity_transfer,
    ind_comparison,
    indiscrete,
)
from .errors import BoundExceeded, ValidationError, VerificationError
from .maps import ContinuousMap, is_homogeneous, verify
from .rng import SplitMix64, derive_seed
from .spaces import (
    TopSpace,
    is_connected,
    is_hereditarily_disconnected,
    is_t0,
    is_zero_dimensional,
    subspace,
)
from .specdoc import instance_json

MAX_DRAW_ATTEMPTS = 60


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_base_points: int = 5
    max_subbase: int = 4
    max_factor_points: int = 3
    trials: int = 200
    size_budget: int = 2000
    max_opens: int = 20000

    def __post_init__(self):
        for name in (
            "max_base_points",
            "max_subbase",
            "max_factor_points",
            "size_budget",
            "max_opens",
        ):
            if getattr(self, name) < 1:
                raise ValidationError(f"{name} must be at least 1")
        if self.trials < 0:
            raise ValidationError("trials must not be negative")
        if self.size_budget < self.max_base_points:
            raise ValidationError("size_budget must cover the base alone")


@dataclass(frozen=True)
class Failure:
    trial: int
    invariant: str
    instance: str  # replayable JSON document, empty if none was drawn


@dataclass(frozen=True)
class PropertyReport:
    suite: str
    attempted: int
    passed: int
    skipped: int
    failures: tuple[Failure, ...]
    seconds: float
    notes: tuple[str, ...] = ()

    def ok(self) -> bool:
        return not self.failures

    def summary_line(self) -> str:
        state = "pass" if self.ok() else "FAIL"
        return (
            f"{self.suite}: {state} "
            f"({self.passed} passed, {self.skipped} skipped, "
            f"{len(self.failures)} failed, {self.seconds:.2f}s)"
        )


def reports_equal_ignoring_time(
    a: Iterable[PropertyReport], b: Iterable[PropertyReport]
) -> bool:
    strip = lambda r: (r.suite, r.attempted, r.passed, r.skipped, r.failures, r.notes)
    left, right = list(a), list(b)
    return len(left) == len(right) and all(
        strip(x) == strip(y) for x, y in zip(left, right)
    )


# -- random instances ----------------------------------------------------


class _Skip(Exception):
    """Trial abandoned for budget or conditioning reasons; counted."""


def _random_poset(rng: SplitMix64, max_points: int) -> TopSpace:
    n = 1 + rng.below(max_points)
    prob = 10 + rng.below(81)  # percent, drawn per space
    rows = [1 << i for i in range(n)]
    for i in range(n - 2, -1, -1):
        for j in range(i + 1, n):
            if rng.below(100) < prob:
                rows[i] |= rows[j]
    perm = list(range(n))
    rng.shuffle(perm)
    out = [0] * n
    for i in range(n):
        m = 0
        for y in bits(rows[i]):
            m |= 1 << perm[y]
        out[perm[i]] = m
    return TopSpace(n, tuple(out))


def random_space(cfg: GenConfig, rng: SplitMix64) -> TopSpace:
    """A uniform-seeded random T0 space on at most max_base_points
    points: a random partial order, read as its Alexandrov topology."""
    return _random_poset(rng, cfg.max_base_points)


def _random_connected(
    rng: SplitMix64, max_points: int, min_points: int = 1
) -> TopSpace:
    for _ in range(MAX_DRAW_ATTEMPTS):
        space = _random_poset(rng, max_points)
        if space.n >= min_points and is_connected(space):
            return space
    # a chain is always connected; randomly relabeled for variety
    n = max(min_points, 2)
    rows = [((1 << n) - 1) & ~((1 << i) - 1) for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    out = [0] * n
    for i in range(n):
        m = 0
        for y in bits(rows[i]):
            m |= 1 << perm[y]
        out[perm[i]] = m
    return TopSpace(n, tuple(out))


def _generates(space: TopSpace, family: list[int]) -> bool:
    for x in range(space.n):
        m = space.full_mask
        for s in family:
            if (s >> x) & 1:
                m &= s
        if m != space.min_nbrs[x]:
            return False
    return True


def random_subbase(
    space: TopSpace, cfg: GenConfig, rng: SplitMix64
) -> SubbaseSel | None:
    """A random generating selection within the member budget, or None
    when this space cannot be trimmed into the budget by removals.

    Starts from the minimal-neighborhood family, which always generates,
    then walks a few random mutations (add an open, merge two members,
    drop one) that each preserve generation, and finally sheds members
    down to the budget where possible.
    """
    opens = [o for o in sorted(space.open_sets()) if o]
    family = sorted(set(space.min_nbrs), key=lambda m: (m.bit_count(), m))
    for _ in range(rng.below(5)):
        op = rng.below(3)
        if op == 0 and len(family) < cfg.max_subbase + 2:
            cand = opens[rng.below(len(opens))]
            if cand not in family:
                family.append(cand)
        elif op == 1 and len(family) >= 2:
            i = rng.below(len(family))
            j = rng.below(len(family))
            if i != j:
                merged = family[i] | family[j]
                trial = [s for k, s in enumerate(family) if k not in (i, j)]
                if merged not in trial:
                    trial.append(merged)
                if _generates(space, trial):
                    family = trial
        elif family:
            i = rng.below(len(family))
            trial = family[:i] + family[i + 1 :]
            if _generates(space, trial):
                family = trial
    while len(family) > cfg.max_subbase:
        order = list(range(len(family)))
        rng.shuffle(order)
        for i in order:
            trial = family[:i] + family[i + 1 :]
            if _generates(space, trial):
                family = trial
                break
        else:
            return None
    rng.shuffle(family)
    return SubbaseSel(space, tuple(family))


def _draw_selection(
    cfg: GenConfig,
    rng: SplitMix64,
    base_draw: Callable[[SplitMix64], TopSpace],
) -> SubbaseSel:
    for _ in range(MAX_DRAW_ATTEMPTS):
        base = base_draw(rng)
        sel = random_subbase(base, cfg, rng)
        if sel is not None:
            return sel
    raise _Skip("no admissible subbase within the member budget")


# -- trial bookkeeping ---------------------------------------------------


@dataclass
class _Trial:
    cfg: GenConfig
    rng: SplitMix64
    instance: str = ""
    notes: dict = field(default_factory=dict)

    def set_instance(self, sel: SubbaseSel, factors, **extras) -> None:
        self.instance = instance_json(sel, factors, **extras)

    def note(self, key: str) -> None:
        self.notes[key] = self.notes.get(key, 0) + 1


def _run_suite(
    name: str, cfg: GenConfig, trial_fn: Callable[[_Trial], None]
) -> PropertyReport:
    rng = SplitMix64(derive_seed(cfg.seed, name))
    passed = skipped = 0
    failures: list[Failure] = []
    notes: dict = {}
    start = time.perf_counter()
    for index in range(cfg.trials):
        trial = _Trial(cfg, rng.spawn(index))
        try:
            trial_fn(trial)
            passed += 1
        except (_Skip, BoundExceeded) as exc:
            skipped += 1
            key = exc.args[0] if exc.args else type(exc).__name__
            notes["skip: " + str(key)] = notes.get("skip: " + str(key), 0) + 1
        except (VerificationError, ValidationError) as exc:
            failures.append(Failure(index, str(exc), trial.instance))
        for key, count in trial.notes.items():
            notes[key] = notes.get(key, 0) + count
    seconds = time.perf_counter() - start
    return PropertyReport(
        name,
        cfg.trials,
        passed,
        skipped,
        tuple(failures),
        seconds,
        tuple(f"{k}: {v}" for k, v in sorted(notes.items())),
    )


def _build(trial: _Trial, sel: SubbaseSel, factors, cap: int | None = None) -> AmalgamSpace:
    trial.set_instance(sel, factors)
    budget = trial.cfg.size_budget if cap is None else min(trial.cfg.size_budget, cap)
    return build_amalgam(sel, factors, max_points=budget)


def _materialize_opens(trial: _Trial, space: TopSpace) -> None:
    # pre-pay the open-family cost under the config cap so the clopen
    # scans below run on the cached family; too many opens skips the trial
    space.open_sets(limit=trial.cfg.max_opens)


# -- amalgamativeness suites ---------------------------------------------


def _zero_choice(sel: SubbaseSel) -> tuple[int, ...]:
    return tuple(0 for _ in sel.sets)


def _converse_on_copies(a: AmalgamSpace, pred, label: str) -> None:
    # the amalgam landed in the class; its embedded base and factor
    # copies must then be in the class as subspaces
    eb = embed_base(a, _zero_choice(a.sel))
    verify(
        pred(subspace(a.space, eb.image_mask())),
        f"embedded base copy must be {label}",
    )
    for i, s in enumerate(a.sel.sets):
        p = next(iter(bits(s)))
        rest = {j: 0 for j in a.sel.members_containing(p) if j != i}
        ef = embed_factor(a, p, i, rest)
        verify(
            pred(subspace(a.space, ef.image_mask())),
            f"embedded copy of factor {i} must be {label}",
        )


def _corrupted(space: TopSpace, class_id: str) -> TopSpace:
    if space.n < 2:
        raise _Skip("corruption needs at least two points")
    full = space.full_mask
    if class_id == "amalgamative-T0":
        return TopSpace(space.n, (full,) * space.n)
    # a cone: one point's neighborhood swallows everything, the rest
    # become isolated; connected, hence neither HD nor zero-dimensional
    return TopSpace(
        space.n, (full,) + tuple(1 << i for i in range(1, space.n))
    )


_CLASS_SUITES = {
    "amalgamative-T0": (
        is_t0,
        "T0",
        lambda cfg, rng: _random_poset(rng, cfg.max_base_points),
        lambda cfg, rng: _random_poset(rng, cfg.max_factor_points),
    ),
    "amalgamative-HD": (
        is_hereditarily_disconnected,
        "hereditarily disconnected",
        lambda cfg, rng: discrete(1 + rng.below(cfg.max_base_points)),
        lambda cfg, rng: discrete(1 + rng.below(cfg.max_factor_points)),
    ),
    "amalgamative-0dim": (
        lambda s: is_zero_dimensional(s) and is_t0(s),
        "zero-dimensional T0",
        lambda cfg, rng: discrete(1 + rng.below(cfg.max_base_points)),
        lambda cfg, rng: discrete(1 + rng.below(cfg.max_factor_points)),
    ),
}


def verify_amalgamative(
    class_id: str, cfg: GenConfig, corrupt: bool = False
) -> PropertyReport:
    """Base and factors in the class imply the amalgam is in the class,
    plus the converse through embedded copies.  ``corrupt`` swaps in a
    deliberately broken topology to prove the suite can fail."""
    if class_id not in _CLASS_SUITES:
        raise ValidationError(f"unknown amalgamative class {class_id!r}")
    pred, label, base_draw, factor_draw = _CLASS_SUITES[class_id]

    def trial_fn(trial: _Trial) -> None:
        sel = _draw_selection(
            trial.cfg, trial.rng, lambda r: base_draw(trial.cfg, r)
        )
        factors = tuple(factor_draw(trial.cfg, trial.rng) for _ in sel.sets)
        verify(
            pred(sel.base) and all(pred(f) for f in factors),
            "generated instance must satisfy the hypothesis",
        )
        a = _build(trial, sel, factors)
        if corrupt:
            verify(
                pred(_corrupted(a.space, class_id)),
                f"amalgam must be {label}",
            )
            return
        verify(pred(a.space), f"amalgam must be {label}")
        check_structural_facts(a)
        _converse_on_copies(a, pred, label)

    name = class_id + ("+corrupt" if corrupt else "")
    return _run_suite(name, cfg, trial_fn)


# -- the other suites ----------------------------------------------------


def _facts_trial(trial: _Trial) -> None:
    sel = _draw_selection(
        trial.cfg, trial.rng, lambda r: _random_poset(r, trial.cfg.max_base_points)
    )
    factors = tuple(
        _random_poset(trial.rng, trial.cfg.max_factor_points) for _ in sel.sets
    )
    a = _build(trial, sel, factors)
    check_structural_facts(a)


def _quotient_trial(trial: _Trial) -> None:
    for _ in range(MAX_DRAW_ATTEMPTS):
        sel = _draw_selection(
            trial.cfg,
            trial.rng,
            lambda r: _random_poset(r, trial.cfg.max_base_points),
        )
        factors = tuple(
            _random_poset(trial.rng, trial.cfg.max_factor_points)
            for _ in sel.sets
        )
        product = sel.base.n
        for f in factors:
            product *= f.n
        if product <= 256:
            break
    else:
        raise _Skip("no instance with presentation product within 256")
    a = _build(trial, sel, factors)
    quotient_presentation(a, max_points=256)
    check_structural_facts(a)


def _conn_witness_trial(trial: _Trial) -> None:
    cfg, rng = trial.cfg, trial.rng
    sel = _draw_selection(cfg, rng, lambda r: _random_connected(r, cfg.max_base_points))
    base = sel.base
    e = 1 << rng.below(base.n)
    for x in range(base.n):
        if rng.below(2):
            e |= 1 << x
    factors = tuple(
        _random_connected(rng, cfg.max_factor_points)
        if (sel.sets[i] & e) == e
        else _random_poset(rng, cfg.max_factor_points)
        for i in range(len(sel.sets))
    )
    a = _build(trial, sel, factors)
    _materialize_opens(trial, a.space)
    verify(
        connectedness_with_witness(a, e),
        "conditioned witness hypothesis must hold and force connectedness",
    )
    y0 = rng.below(len(a.carrier))
    y1 = rng.below(len(a.carrier))
    connectedness_chain(a, e, y0, y1)
    check_structural_facts(a)


def _conn_second_trial(trial: _Trial) -> None:
    cfg, rng = trial.cfg, trial.rng
    sel = _draw_selection(cfg, rng, lambda r: _random_connected(r, cfg.max_base_points))
    full = sel.base.full_mask
    factors = tuple(
        _random_connected(rng, cfg.max_factor_points)
        if s == full
        else _random_poset(rng, cfg.max_factor_points)
        for s in sel.sets
    )
    a = _build(trial, sel, factors)
    _materialize_opens(trial, a.space)
    verify(
        connectedness_without_full_member(a),
        "conditioned hypothesis must hold and force connectedness",
    )
    check_structural_facts(a)


def _closed_points(space: TopSpace) -> list[int]:
    out = []
    for p in range(space.n):
        if all(
            p == y or not (space.min_nbrs[y] >> p) & 1 for y in range(space.n)
        ):
            out.append(p)
    return out


def _connectify_trial(trial: _Trial) -> None:
    cfg, rng = trial.cfg, trial.rng
    for _ in range(MAX_DRAW_ATTEMPTS):
        ambient = _random_connected(rng, cfg.max_base_points, min_points=2)
        p = trial.rng.choice(_closed_points(ambient))
        w = ambient.full_mask & ~(1 << p)
        base = subspace(ambient, w)
        sel = random_subbase(base, cfg, rng)
        if sel is not None:
            break
    else:
        raise _Skip("no admissible subbase within the member budget")
    factors = tuple(
        _random_poset(rng, cfg.max_factor_points) for _ in sel.sets
    )
    embed = ContinuousMap(base, ambient, tuple(bits(w)))
    trial.set_instance(
        sel, factors, ambient=ambient, embedding=embed, outside_point=p
    )
    a = build_amalgam(sel, factors, max_points=cfg.size_budget)
    conn = connectify(
        a, ambient, embed, p, max_points=cfg.size_budget, opens_limit=cfg.max_opens
    )
    check_structural_facts(a)
    check_structural_facts(conn.result)


_HOMOG_CARRIER_CAP = 60


def _homog_trial(trial: _Trial) -> None:
    cfg, rng = trial.cfg, trial.rng
    m = 1 + rng.below(min(cfg.max_base_points, cfg.max_subbase))
    base = discrete(m)
    shape = rng.below(3)
    if shape == 1 and m >= 3:
        sets = tuple(base.full_mask & ~(1 << i) for i in range(m))
    elif shape == 2 and m + 1 <= cfg.max_subbase and m >= 2:
        sets = tuple(1 << i for i in range(m)) + (base.full_mask,)
    else:
        sets = tuple(1 << i for i in range(m))
    sel = SubbaseSel(base, sets)
    catalogue = [discrete(k) for k in range(1, cfg.max_factor_points + 1)]
    catalogue += [indiscrete(k) for k in range(2, cfg.max_factor_points + 1)]
    z = catalogue[rng.below(len(catalogue))]
    factors = (z,) * len(sets)
    a = _build(trial, sel, factors, cap=_HOMOG_CARRIER_CAP)
    result = homogeneity_transfer(a, z, max_points=max(cfg.max_base_points, 10))
    verify(
        result.applicable,
        "constructed stabilizer must act transitively",
    )
    check_structural_facts(a)


def _reduced_trial(trial: _Trial) -> None:
    cfg, rng = trial.cfg, trial.rng
    for _ in range(MAX_DRAW_ATTEMPTS):
        sel = _draw_selection(cfg, rng, lambda r: _random_poset(r, cfg.max_base_points))
        factors = tuple(
            _random_poset(rng, cfg.max_factor_points) for _ in sel.sets
        )
        try:
            a = _build(trial, sel, factors, cap=128)
        except BoundExceeded:
            continue
        break
    else:
        raise _Skip("no instance within the reduced-suite carrier cap")
    for w in range(1, 1 << sel.base.n):
        reduced_amalgam(a, w)
    check_structural_facts(a)


_IND_CARRIER_CAP = 14


def _ind_trial(trial: _Trial) -> None:
    cfg, rng = trial.cfg, trial.rng
    for _ in range(MAX_DRAW_ATTEMPTS):
        sel = _draw_selection(cfg, rng, lambda r: _random_poset(r, cfg.max_base_points))
        factors = tuple(
            discrete(1 + rng.below(cfg.max_factor_points)) for _ in sel.sets
        )
        try:
            a = _build(trial, sel, factors, cap=_IND_CARRIER_CAP)
        except BoundExceeded:
            continue
        break
    else:
        raise _Skip("no instance within the dimension-suite carrier cap")
    base_ind, amalgam_ind, zero = ind_comparison(a, max_points=_IND_CARRIER_CAP)
    verify(zero, "dimension suite factors must be zero-dimensional")
    trial.note(
        "ind equal" if base_ind == amalgam_ind else "ind differs"
    )
    check_structural_facts(a)


SUITES: dict[str, Callable[[GenConfig], PropertyReport]] = {
    "amalgamative-T0": lambda cfg: verify_amalgamative("amalgamative-T0", cfg),
    "amalgamative-HD": lambda cfg: verify_amalgamative("amalgamative-HD", cfg),
    "amalgamative-0dim": lambda cfg: verify_amalgamative("amalgamative-0dim", cfg),
    "facts": lambda cfg: _run_suite("facts", cfg, _facts_trial),
    "quotient": lambda cfg: _run_suite("quotient", cfg, _quotient_trial),
    "conn-witness": lambda cfg: _run_suite("conn-witness", cfg, _conn_witness_trial),
    "conn-second": lambda cfg: _run_suite("conn-second", cfg, _conn_second_trial),
    "connectify": lambda cfg: _run_suite("connectify", cfg, _connectify_trial),
    "homog": lambda cfg: _run_suite("homog", cfg, _homog_trial),
    "reduced": lambda cfg: _run_suite("reduced", cfg, _reduced_trial),
    "ind": lambda cfg: _run_suite("ind", cfg, _ind_trial),
}


def run_suite(name: str, cfg: GenConfig) -> PropertyReport:
    if name not in SUITES:
        raise ValidationError(f"unknown suite {name!r}")
    return SUITES[name](cfg)


def run_all(cfg: GenConfig) -> list[PropertyReport]:
    return [runner(cfg) for runner in SUITES.values()]


# -- counterexample search ----------------------------------------------


def _factors_all(pred):
    return lambda a: all(pred(f) for f in a.factors)


PREDICATES: dict[str, Callable[[AmalgamSpace], bool]] = {
    "base-connected": lambda a: is_connected(a.base),
    "factors-connected": _factors_all(is_connected),
    "amalgam-connected": lambda a: is_connected(a.space),
    "base-t0": lambda a: is_t0(a.base),
    "amalgam-t0": lambda a: is_t0(a.space),
    "base-and-factors-homogeneous": lambda a: is_homogeneous(a.base)
    and all(is_homogeneous(f) for f in a.factors),
    "amalgam-homogeneous": lambda a: is_homogeneous(
        a.space, max_points=max(10, a.space.n)
    ),
}


def search_counterexample(
    hypothesis: str, conclusion: str, cfg: GenConfig
) -> PropertyReport:
    """Hunt for amalgams satisfying one registered predicate but not
    another.  Hits land in the report's failure list as replayable
    instances; "passed" counts trials where the implication held or the
    hypothesis simply did not apply."""
    if hypothesis not in PREDICATES or conclusion not in PREDICATES:
        raise ValidationError("unknown predicate id")
    hyp, concl = PREDICATES[hypothesis], PREDICATES[conclusion]

    def trial_fn(trial: _Trial) -> None:
        sel = _draw_selection(
            trial.cfg, trial.rng, lambda r: _random_poset(r, trial.cfg.max_base_points)
        )
        factors = tuple(
            _random_poset(trial.rng, trial.cfg.max_factor_points)
            for _ in sel.sets
        )
        a = _build(trial, sel, factors)
        _materialize_opens(trial, a.space)
        if hyp(a) and not concl(a):
            raise VerificationError(
                f"instance satisfies {hypothesis} but not {conclusion}"
            )

    return _run_suite(f"search:{hypothesis}=>{conclusion}", cfg, trial_fn)


__all__ = [
    "GenConfig",
    "Failure",
    "PropertyReport",
    "reports_equal_ignoring_time",
    "random_space",
    "random_subbase",
    "verify_amalgamative",
    "SUITES",
    "run_suite",
    "run_all",
    "PREDICATES",
    "search_counterexample",
]
