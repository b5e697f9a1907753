"""End-to-end runs behind the command line: load, solve, embed, export."""

from __future__ import annotations

import json
import logging
import warnings
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .diagnostics import diagnostic_report
from .eigensolver import eig_dense
from .embedding import circular_cluster_score, phases
from .estimator import DiffusionMaps, solve
from .exceptions import IndexOutOfRangeError, ParamOutOfRangeError
from .generators import generate
from .graph import symmetrize
from .io import fmt, read_edge_list, read_gml, write_csv, write_edge_list
from .laplacian import as_charge, build_magnetic_laplacian, normalize
from .svg import line_plot_svg, scatter_svg, torus_svg
from .validation import prepare_graph

logger = logging.getLogger(__name__)

__all__ = [
    "RunConfig",
    "load_config_file",
    "load_input",
    "cmd_generate",
    "cmd_embed",
    "cmd_spectrum",
    "cmd_diagnose",
    "cmd_diffusion_baseline",
]


@dataclass
class RunConfig:
    """Everything one pipeline run needs.

    Either ``input`` (edge list, or GML by ``.gml`` suffix) or ``generator``
    (a kind understood by :func:`~magnetic_eigenmaps.generators.generate`,
    with ``params``) names the graph.
    """

    input: str | None = None
    generator: str | None = None
    params: dict = field(default_factory=dict)
    g: Fraction | str = Fraction(1, 4)
    k: int = 4
    axes: tuple = (0, 1)
    solver: str = "dense"
    tol: float = 1e-10
    max_iter: int = 10_000
    out: str = "out"
    seed: int = 0
    drop_isolated: bool = False
    rotate: dict = field(default_factory=dict)

    def __post_init__(self):
        self.g = as_charge(self.g)
        self.k = int(self.k)
        self.axes = tuple(int(a) for a in self.axes)
        if self.k < 2:
            raise ParamOutOfRangeError(f"k must be >= 2, got {self.k}")
        bad = [a for a in self.axes if not 0 <= a < self.k]
        if bad:
            raise IndexOutOfRangeError(f"axes {bad} must be < k={self.k}")
        if (self.input is None) == (self.generator is None):
            raise ParamOutOfRangeError("give exactly one of an input file or a generator")
        if self.solver not in ("dense", "power"):
            raise ParamOutOfRangeError(f"solver must be 'dense' or 'power', got {self.solver!r}")
        self.rotate = {int(a): float(v) for a, v in dict(self.rotate).items()}

    def as_dict(self) -> dict:
        d = asdict(self)
        d["g"] = str(self.g)
        d["axes"] = list(self.axes)
        return d


def load_config_file(path) -> dict:
    """Read a JSON or YAML mapping of :class:`RunConfig` fields."""
    text = Path(path).read_text(encoding="utf-8")
    if str(path).endswith((".yml", ".yaml")):
        import yaml

        data = yaml.safe_load(text)
    else:
        data = json.loads(text)
    if not isinstance(data, dict):
        raise ParamOutOfRangeError(f"{path}: config must be a mapping")
    return data


def load_input(config: RunConfig):
    """Graph and labels (or ``None``), reduced to a usable connected graph.

    Returns ``(graph, labels)`` where both refer to the kept nodes only.
    """
    if config.input is not None:
        path = Path(config.input)
        if path.suffix.lower() == ".gml":
            graph, labels = read_gml(path, drop_isolated=config.drop_isolated)
        else:
            graph, labels = read_edge_list(path), None
    else:
        graph, labels = generate(config.generator, config.params, config.seed)
    graph, kept = prepare_graph(graph, drop_isolated=config.drop_isolated)
    if labels is not None:
        labels = np.asarray(labels)[kept]
    return graph, labels


def _outdir(config):
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _spectra(graph, config, k):
    sym = symmetrize(graph)
    lap = normalize(build_magnetic_laplacian(sym, config.g))
    es = solve(lap, min(k, graph.n), config.solver, config.tol, config.max_iter, config.seed)
    lap0 = normalize(build_magnetic_laplacian(sym, 0))
    es0 = eig_dense(lap0, k=min(k, graph.n)) if config.solver == "dense" else solve(
        lap0, min(k, graph.n), "power", config.tol, config.max_iter, config.seed
    )
    return lap, es, es0


def _write_spectrum(out, es, es0, g):
    rows = [(k, float(a), float(b)) for k, (a, b) in enumerate(zip(es.eigenvalues, es0.eigenvalues))]
    write_csv(out / "spectrum.csv", ["k", "lambda_g", "lambda_0"], rows)
    svg = line_plot_svg(
        {f"g = {g}": es.eigenvalues, "g = 0": es0.eigenvalues},
        title="Lowest eigenvalues of the normalized Laplacians",
        xlabel="k",
        ylabel="eigenvalue",
    )
    (out / "spectrum.svg").write_text(svg, encoding="utf-8")


def cmd_generate(config: RunConfig) -> dict:
    """Write the generated graph as an edge list (plus labels.csv when available)."""
    graph, labels = generate(config.generator, config.params, config.seed)
    out = _outdir(config)
    write_edge_list(graph, out / "graph.edges")
    files = {"edges": str(out / "graph.edges")}
    if labels is not None:
        write_csv(out / "labels.csv", ["node_id", "label"], zip(graph.ids, labels.tolist()))
        files["labels"] = str(out / "labels.csv")
    return files


def cmd_embed(config: RunConfig) -> dict:
    """Magnetic eigenmaps: coords.csv, spectrum.csv/svg, diagnostics.json, embedding.svg."""
    graph, labels = load_input(config)
    if config.g == 0:
        warnings.warn("g = 0 carries no directional information; phases will be constant", UserWarning, stacklevel=2)
    lap, es, es0 = _spectra(graph, config, config.k)
    axes = tuple(a for a in config.axes if a < es.k)
    emb = phases(es, axes, rotate=config.rotate)
    out = _outdir(config)

    header = ["node_id"] + [f"phase_{a}" for a in axes] + [f"modulus_{a}" for a in axes]
    rows = (
        [graph.ids[i]] + [float(v) for v in emb.coords[i]] + [float(v) for v in emb.moduli[i]]
        for i in range(graph.n)
    )
    write_csv(out / "coords.csv", header, rows)
    _write_spectrum(out, es, es0, config.g)

    report = diagnostic_report(lap, es)
    report["eigenvalue_clusters"] = es.clusters
    report["residuals"] = [float(r) for r in es.residuals]
    report["flagged_nodes"] = int(emb.flagged.any(axis=1).sum())
    if labels is not None:
        report["cluster_scores"] = {
            f"phase_{a}": circular_cluster_score(emb, labels, axis=a) for a in axes
        }
    report["config"] = config.as_dict()
    (out / "diagnostics.json").write_text(json.dumps(report, indent=2), encoding="utf-8")

    title = f"Magnetic eigenmaps, g = {config.g}"
    (out / "embedding.svg").write_text(torus_svg(emb.coords, labels, title=title, axes=axes), encoding="utf-8")
    return {
        "coords": str(out / "coords.csv"),
        "spectrum": str(out / "spectrum.csv"),
        "diagnostics": str(out / "diagnostics.json"),
        "embedding": str(out / "embedding.svg"),
        "spectrum_plot": str(out / "spectrum.svg"),
        "report": report,
    }


def cmd_spectrum(config: RunConfig) -> dict:
    """Lowest ``k`` eigenvalues at ``g`` and at ``g = 0``."""
    graph, _ = load_input(config)
    _, es, es0 = _spectra(graph, config, config.k)
    out = _outdir(config)
    _write_spectrum(out, es, es0, config.g)
    return {"spectrum": str(out / "spectrum.csv"), "spectrum_plot": str(out / "spectrum.svg"),
            "lambda_g": es.eigenvalues.tolist(), "lambda_0": es0.eigenvalues.tolist()}


def cmd_diagnose(config: RunConfig) -> dict:
    """Bound ledger and synchronization diagnostics as diagnostics.json."""
    graph, labels = load_input(config)
    lap, es, _ = _spectra(graph, config, max(2, config.k))
    report = diagnostic_report(lap, es)
    if labels is not None:
        emb = phases(es, (0,))
        report["cluster_scores"] = {"phase_0": circular_cluster_score(emb, labels, axis=0)}
    report["config"] = config.as_dict()
    out = _outdir(config)
    (out / "diagnostics.json").write_text(json.dumps(report, indent=2), encoding="utf-8")
    return {"diagnostics": str(out / "diagnostics.json"), "report": report}


def cmd_diffusion_baseline(config: RunConfig) -> dict:
    """Real ``g = 0`` coordinates ``phi_a, phi_b`` and their scatter plot.

    ``config.axes`` gives ``(a, b)`` with ``1 <= a < b``; ``phi_0`` is constant
    and never exported.
    """
    graph, labels = load_input(config)
    a, b = config.axes[:2] if len(config.axes) >= 2 else (1, 2)
    if not 1 <= a < b:
        raise IndexOutOfRangeError(f"baseline axes must satisfy 1 <= a < b, got {(a, b)}")
    if b >= graph.n:
        raise IndexOutOfRangeError(f"eigen index {b} needs at least {b + 1} nodes")
    dm = DiffusionMaps(n_components=b, start=1).fit(graph)
    coords = dm.embedding_[:, [a - 1, b - 1]]
    out = _outdir(config)
    write_csv(
        out / "diffusion.csv",
        ["node_id", f"phi0_{a}", f"phi0_{b}"],
        ([graph.ids[i], float(coords[i, 0]), float(coords[i, 1])] for i in range(graph.n)),
    )
    svg = scatter_svg(
        coords[:, 0], coords[:, 1], labels,
        title="Diffusion coordinates (g = 0)", xlabel=f"phi_{a}", ylabel=f"phi_{b}",
    )
    (out / "diffusion.svg").write_text(svg, encoding="utf-8")
    return {"diffusion": str(out / "diffusion.csv"), "plot": str(out / "diffusion.svg"),
            "eigenvalues": [fmt(v) for v in dm.eigenvalues_]}
