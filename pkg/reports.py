"""Build the report tables behind each command-line subcommand."""
import logging
import math
from fractions import Fraction

import numpy as np
import pandas as pd

from credit_core import (
    article_total_credit,
    as_k,
    mfc_author,
    sample_bridge_curve,
    sample_mfc_curve,
)
from institute_credit import (
    CLASSICAL_METHODS,
    FAMILIES,
    BylineEntry,
    Publication,
    as_scheme,
    classical_scores,
    publication_scores,
    weighted_b_values,
)
from order_analysis import (
    diversity_sum,
    lorenz_curve,
    majorization_compare,
    percentage_of_total,
    shares_from_counts,
)
from perturbation import (
    ParticipationArray,
    add_entity_effect,
    entity_adds_authors_effect,
    median_threshold_indices,
    uniform_addition_effect,
)
from utils.errors import DomainError
from utils.report_table import ReportTable, format_cell

logger = logging.getLogger(__name__)

METHODS = ("mfc", "cmfc", "pmfc", "classical")


def _frame(rows, columns):
    return pd.DataFrame(rows, columns=columns, dtype=object)


def _sorted(corpus):
    return sorted(corpus.publications, key=lambda publication: publication.id)


def _order(a, b, tolerance=1e-12):
    if math.isclose(float(a), float(b), rel_tol=tolerance, abs_tol=tolerance):
        return "="
    return "<" if a < b else ">"


def cmd_score(corpus, institute, method, k=None, scheme=None):
    """Per-publication contributions and the corpus total of one institute."""
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}, expected one of {', '.join(METHODS)}")
    notes = []
    if institute not in corpus.institutes:
        logger.warning("⚠ Institute %r not found in corpus, all scores are 0", institute)
        notes.append(f"institute {institute} does not appear in the corpus")
    publications = _sorted(corpus)

    if method == "classical":
        columns = ["publication", *CLASSICAL_METHODS]
        rows = []
        totals = [0, Fraction(0), 0, Fraction(0)]
        for publication in publications:
            scores = classical_scores(publication).get(institute)
            quadruple = scores.as_tuple() if scores else (0, Fraction(0), 0, Fraction(0))
            rows.append([publication.id, *quadruple])
            totals = [total + value for total, value in zip(totals, quadruple)]
        rows.append(["total", *totals])
        return ReportTable(
            _frame(rows, columns),
            caption=f"Classical counting scores of institute {institute}",
            notes=notes,
        )

    if k is None:
        raise DomainError(f"method {method} needs a value of k")
    k = as_k(k)
    scheme = as_scheme(scheme)
    if scheme is not None and method == "pmfc":
        logger.warning("⚠ Role weights do not apply to pmfc, which counts participation only")
        scheme = None

    terms = dict(
        zip(
            [p.id for p in corpus.publications],
            publication_scores(corpus, institute, method, k, scheme),
        )
    )
    rows = []
    for publication in publications:
        y = publication.count(institute)
        if method == "pmfc":
            share = Fraction(int(y > 0), publication.n_institutes)
        else:
            share = weighted_b_values(publication, institute, scheme)
        rows.append([publication.id, publication.n_authors, publication.n_institutes, y, share, terms[publication.id]])
    total = sum((row[-1] for row in rows), Fraction(0))
    rows.append(["total", None, None, sum(row[3] for row in rows), None, total])
    return ReportTable(
        _frame(rows, ["publication", "N", "M", "Y", "share", method]),
        caption=f"{method.upper()}_{k} of institute {institute}",
        notes=notes,
        column_precision={"share": 4, method: 4},
    )


def table1(config):
    settings = config.get("tables", {}).get("table1", {})
    n_values = settings.get("n_authors", [1, 2, 3, 5, 10, 100])
    k_values = [as_k(k) for k in settings.get("k_values", [1, 2, 3, 5, 10, "inf"])]
    columns = ["quantity", "k", *[f"N={n}" for n in n_values]]
    rows = []
    for quantity, function in (("credit", mfc_author), ("total", article_total_credit)):
        for k in k_values:
            rows.append([quantity, str(k), *[function(n, k) for n in n_values]])
    return ReportTable(_frame(rows, columns), caption="Author credits and their sums for an N-author article")


def table2(config):
    settings = config.get("tables", {}).get("table2", {})
    byline_counts = settings.get("byline_counts", {"A": 4, "B": 2, "C": 1})
    byline = [
        BylineEntry(f"{institute.lower()}{i}", institute)
        for institute, count in byline_counts.items()
        for i in range(1, int(count) + 1)
    ]
    publication = Publication("table2", tuple(byline))
    scores = classical_scores(publication)
    institutes = sorted(scores)
    rows = []
    for index, method in enumerate(CLASSICAL_METHODS):
        values = [scores[institute].as_tuple()[index] for institute in institutes]
        rows.append([method, *values, sum(values, Fraction(0))])
    return ReportTable(
        _frame(rows, ["method", *institutes, "Total"]),
        caption="Scores for the four classical counting methods",
    )


def table3(config):
    settings = config.get("tables", {}).get("table3", {})
    k = as_k(settings.get("k", 2))
    institutes = settings.get("institutes", ["G", "I2", "I3", "I4"])
    target = settings.get("target", institutes[0])
    target_index = institutes.index(target)
    score_columns = [f"score_{institute}" for institute in institutes]
    rows = []
    for counts in settings.get("rows", []):
        shares = shares_from_counts(counts)
        scores = np.power(shares, k.exponent).tolist()
        total = diversity_sum(shares, k)
        percentage = percentage_of_total(shares[target_index], shares, k)
        rows.append([*[int(c) for c in counts], *scores, total, percentage])
    precision = {column: 3 for column in score_columns}
    precision.update({"sum": 3, "percentage": 1})
    return ReportTable(
        _frame(rows, [*institutes, *score_columns, "sum", "percentage"]),
        caption=f"Only the contributions of other institutes change (k = {k}, target {target})",
        column_precision=precision,
    )


TABLES = {1: table1, 2: table2, 3: table3}


def cmd_table(which, config):
    """Recompute reference table 1, 2 or 3 from the inputs in config."""
    try:
        builder = TABLES[int(which)]
    except (KeyError, ValueError):
        raise DomainError(f"unknown table {which!r}, expected 1, 2 or 3") from None
    return builder(config)


def cmd_curves(n_authors, grid_size=100, k_max=100):
    """Samples of k -> MFC_k and lambda -> G_lambda for external plotting."""
    ks, credits = sample_mfc_curve(n_authors, k_max=k_max, grid_size=grid_size)
    lams, bridge = sample_bridge_curve(n_authors, grid_size=grid_size)
    frame = _frame(
        list(zip(ks.tolist(), credits.tolist(), lams.tolist(), bridge.tolist())),
        ["k", "mfc_k", "lambda", "g_lambda"],
    )
    return ReportTable(
        frame,
        caption=f"MFC_k over k in [1, {k_max}] and G_lambda over lambda in [0, 1], N = {n_authors}",
        precision=4,
    )


def cmd_compare(corpus, institutes, k_values, scheme=None):
    """mfc, cmfc and pmfc side by side for each institute and k."""
    if isinstance(institutes, str):
        institutes = [institutes]
    rows = []
    for institute in institutes:
        if institute not in corpus.institutes:
            logger.warning("⚠ Institute %r not found in corpus", institute)
        for k in k_values:
            k = as_k(k)
            mfc = FAMILIES["mfc"](corpus, institute, k, scheme)
            cmfc = FAMILIES["cmfc"](corpus, institute, k, scheme)
            pmfc = FAMILIES["pmfc"](corpus, institute, k)
            rows.append(
                [
                    institute,
                    str(k),
                    mfc,
                    cmfc,
                    pmfc,
                    f"mfc {_order(mfc, cmfc)} cmfc",
                    f"pmfc {_order(pmfc, mfc)} mfc",
                    f"pmfc {_order(pmfc, cmfc)} cmfc",
                ]
            )
    return ReportTable(
        _frame(rows, ["institute", "k", "mfc", "cmfc", "pmfc", "mfc_vs_cmfc", "pmfc_vs_mfc", "pmfc_vs_cmfc"]),
        caption="MFC, CMFC and PMFC per k",
        precision=3,
    )


def parse_action(text):
    """``add_entity:x``, ``add_authors:i:x`` (i 1-based) or ``uniform:a``."""
    parts = [part.strip() for part in str(text).split(":")]
    name, arguments = parts[0], parts[1:]
    try:
        if name == "add_entity" and len(arguments) == 1:
            return ("add_entity", float(arguments[0]) if "." in arguments[0] else int(arguments[0]))
        if name == "add_authors" and len(arguments) == 2:
            added = float(arguments[1]) if "." in arguments[1] else int(arguments[1])
            return ("add_authors", int(arguments[0]) - 1, added)
        if name == "uniform" and len(arguments) == 1:
            return ("uniform", float(arguments[0]) if "." in arguments[0] else int(arguments[0]))
    except ValueError:
        pass
    raise DomainError(f"cannot parse action {text!r}, expected add_entity:x, add_authors:i:x or uniform:a")


def cmd_perturb(array, action, k):
    """Old and new score of every entity under one perturbation."""
    array = array if isinstance(array, ParticipationArray) else ParticipationArray(tuple(array))
    name = action[0]
    if name == "add_entity":
        report = add_entity_effect(array, action[1], k)
    elif name == "add_authors":
        report = entity_adds_authors_effect(array, action[1], action[2], k)
    elif name == "uniform":
        report = uniform_addition_effect(array, action[1], k)
    else:
        raise DomainError(f"unknown action {name!r}")

    frame = report.to_frame()
    frame.insert(1, "count", list(array.counts))
    notes = [
        f"mean mu = {format_cell(array.mean, 4)}",
        f"median Md = {format_cell(array.median, 4)}",
        f"directions compare {report.basis}s",
    ]
    if array.is_sorted:
        indices = median_threshold_indices(array)
        if indices:
            labels = ", ".join(str(i + 1) for i in indices)
            notes.append(f"median threshold set (a_i <= Md/2): {{{labels}}}")
        else:
            notes.append("median threshold set (a_i <= Md/2): empty")
    else:
        notes.append("median threshold set not computed: counts are not sorted increasingly")
    return ReportTable(
        frame.astype(object),
        caption=f"Effect of {name.replace('_', ' ')} at k = {as_k(k)}",
        notes=notes,
        precision=4,
    )


def cmd_lorenz(values, other=None):
    """Lorenz curve vertices, and the majorization verdict against a second array."""
    curve = lorenz_curve(values)
    columns = {"x": curve.x.tolist(), "y": curve.y.tolist()}
    notes = []
    if other is not None:
        columns["y_other"] = lorenz_curve(other).y.tolist()
        verdict = majorization_compare(values, other)
        notes.append(f"majorization: {verdict.value}")
    frame = _frame(list(zip(*columns.values())), list(columns))
    return ReportTable(frame, caption="Lorenz curve (values ranked decreasingly)", notes=notes, precision=4)


def cmd_validate(corpus):
    """Summary of a corpus that passed validation."""
    rows = [
        [publication.id, publication.n_authors, publication.n_institutes, " ".join(publication.institutes)]
        for publication in _sorted(corpus)
    ]
    notes = [
        f"publications: {len(corpus)}",
        f"authors: {len(corpus.authors)}",
        f"institutes: {len(corpus.institutes)}",
    ]
    return ReportTable(_frame(rows, ["publication", "N", "M", "institutes"]), caption="Corpus is valid", notes=notes)
