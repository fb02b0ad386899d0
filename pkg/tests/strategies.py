"""Generators for parser tests: valid documents and fuzz inputs."""

from hypothesis import strategies as st

from grnneuron import CHANNELS, SPECIES
from grnneuron.netdef import (ANALYSES, INTEGRATOR_KEYS, PARAM_NAMES, SWEEP_KEYS, InputDecl,
                              NetworkDocument, NeuronDecl, PinDecl, Ref, Schedule, SweepDecl,
                              WireDecl)

WIRABLE = ("IPTG", "aTc", "IndT")

idents = st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,6}", fullmatch=True)
ints = st.integers(-10**6, 10**6)
floats = st.floats(allow_nan=False, allow_infinity=False, width=64)
numbers = st.one_of(ints, floats)
nonneg = st.one_of(st.integers(0, 10**6), st.floats(0, 1e6))


@st.composite
def schedules(draw):
    times = draw(st.lists(st.floats(0.01, 1e5), max_size=4, unique=True))
    pts = [(0, draw(nonneg))] + [(t, draw(nonneg)) for t in sorted(times)]
    return Schedule(tuple(pts))


@st.composite
def documents(draw):
    names = draw(st.lists(idents, min_size=1, max_size=4, unique=True))
    neurons = tuple(NeuronDecl(n, tuple(
        (k, draw(numbers)) for k in draw(st.lists(st.sampled_from(PARAM_NAMES), max_size=4,
                                                  unique=True)))) for n in names)
    shared = draw(st.lists(idents, max_size=3, unique=True))
    inputs = [InputDecl(s, draw(st.one_of(nonneg, schedules()))) for s in shared]
    targets = draw(st.lists(st.tuples(st.sampled_from(names), st.sampled_from(CHANNELS)),
                            max_size=6, unique=True))
    for n, ch in targets:
        opts = [nonneg, schedules()] + ([st.sampled_from(shared).map(Ref)] if shared else [])
        inputs.append(InputDecl(f"{n}.{ch}", draw(st.one_of(*opts))))
    clamped = set(targets)
    wires = []
    if len(names) > 1:
        for _ in range(draw(st.integers(0, 4))):
            i = draw(st.integers(0, len(names) - 2))
            j = draw(st.integers(i + 1, len(names) - 1))
            ch = draw(st.sampled_from(WIRABLE))
            if (names[j], ch) in clamped:
                continue
            wires.append(WireDecl(names[i], names[j], ch, draw(st.none() | nonneg)))
    pins = tuple(PinDecl(n, s, draw(nonneg)) for n, s in draw(
        st.lists(st.tuples(st.sampled_from(names), st.sampled_from(SPECIES)), max_size=3,
                 unique=True)))
    integ = tuple((k, draw(numbers)) for k in draw(
        st.lists(st.sampled_from(INTEGRATOR_KEYS), max_size=3, unique=True)))
    sweeps = []
    for s in draw(st.lists(idents, max_size=2, unique=True)):
        a = draw(st.sampled_from(ANALYSES))
        keys = draw(st.lists(st.sampled_from(SWEEP_KEYS[a] + ("output", "threshold")),
                             max_size=3, unique=True))
        vals = st.one_of(numbers, idents.map(Ref), st.lists(
            st.one_of(numbers, idents.map(Ref)), max_size=3).map(tuple))
        sweeps.append(SweepDecl(s, (("analysis", Ref(a)),) + tuple((k, draw(vals)) for k in keys)))
    return NetworkDocument(neurons, tuple(inputs), tuple(wires), pins, integ, tuple(sweeps))


# -- fuzz inputs --------------------------------------------------------------

ALPHABET = list("[]{}=.:,-># \t\n0123456789eE+") + [
    "neuron", "inputs", "wires", "pins", "sweep", "integrator", "wire", "gain", "out", "n1",
    "IPTG", "aTc", "IndT", "fA", "k_prodA", "analysis", "1e999", "\r", "\x00", "é", "٣"]


def _mutate(rng, text):
    b = bytearray(text.encode())
    for _ in range(int(rng.integers(1, 6))):
        op = rng.integers(5)
        pos = int(rng.integers(len(b) + 1))
        if op == 0 and b:
            del b[pos:pos + int(rng.integers(1, 8))]
        elif op == 1:
            b[pos:pos] = ALPHABET[int(rng.integers(len(ALPHABET)))].encode()
        elif op == 2 and b:
            b[min(pos, len(b) - 1)] = int(rng.integers(256))
        elif op == 3:
            lines = bytes(b).split(b"\n")
            i, j = rng.integers(len(lines), size=2)
            lines[i], lines[j] = lines[j], lines[i]
            b = bytearray(b"\n".join(lines))
        else:
            b = b[:pos]
    return bytes(b)


SEEDS = [
    "[neuron n1]\n",
    "[neuron n1]\n[neuron n2]\n[inputs]\nx = 5\nn1.IPTG = x\n"
    "[wires]\nwire n1.out -> n2.aTc gain 2\n[pins]\nn2.rep3 = 1\n",
    "[neuron a]\nk_prodA = 1.5\n[sweep s]\nanalysis = gate\ninputs = [x, y]\n"
    "[integrator]\nrel_tol = 1e-8\n[inputs]\na.IPTG = {0: 1, 5: 2}\n",
    "[neuron n1]\n\n[pins]\nn1.Ind1 = 0.0\nn1.Ind2 = 0.0\n\n[sweep nullcline]\n"
    "analysis = nullcline\n",
]


def fuzz_inputs(rng, n, kinds=("bytes", "tokens", "mutant", "mutant")):
    """Yield ``n`` inputs cycling through random bytes, token soup and mutants."""
    for i in range(n):
        kind = kinds[i % len(kinds)]
        if kind == "bytes":
            yield rng.bytes(int(rng.integers(0, 80)))
        elif kind == "tokens":
            yield "".join(ALPHABET[k] for k in rng.integers(len(ALPHABET),
                                                            size=rng.integers(1, 30)))
        else:
            yield _mutate(rng, SEEDS[int(rng.integers(len(SEEDS)))])
