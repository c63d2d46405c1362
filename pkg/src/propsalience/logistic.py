"""Binary logistic regression for the salience feature analysis.

Fits by iteratively reweighted least squares with a tiny L2 ridge (1e-6) for
numerical stability; the reported log-likelihood is the plain Bernoulli one.
Per-document fixed-effect intercepts stand in for a document random effect.
Single-term deletions are compared to the full model by likelihood-ratio
chi-square tests and ranked by the reduced model's AIC.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, SingularDesignError
from .special import chi2_sf

INTERCEPT = "(intercept)"
DEFAULT_FEATURES = ("position", "is_sent", "length", "relation", "centrality")
NUMERIC_FEATURES = ("position", "is_sent", "length", "centrality")

RIDGE = 1e-6
MAX_ITER = 200
STEP_TOL = 1e-8
_PCLIP = 1e-10


@dataclass(frozen=True)
class Design:
    matrix: np.ndarray  # (n, p)
    y: np.ndarray  # (n,) in {0, 1}
    columns: tuple[str, ...]
    terms: dict[str, tuple[int, ...]]  # droppable term -> column indices

    @property
    def n(self):
        return self.matrix.shape[0]

    @property
    def n_params(self):
        return self.matrix.shape[1]

    def without(self, term: str) -> "Design":
        drop = set(self.terms[term])
        keep = [j for j in range(self.n_params) if j not in drop]
        return Design(
            matrix=self.matrix[:, keep],
            y=self.y,
            columns=tuple(self.columns[j] for j in keep),
            terms={t: tuple(keep.index(j) for j in cols) for t, cols in self.terms.items() if t != term},
        )


@dataclass(frozen=True)
class ModelFit:
    coefficients: dict[str, float]
    log_likelihood: float
    aic: float
    n_params: int
    converged: bool
    diagnostic: str | None = None

    def coef_vector(self, columns):
        return np.array([self.coefficients[c] for c in columns])


@dataclass(frozen=True)
class LrtRow:
    feature: str
    npar_delta: int
    aic: float
    lrt_statistic: float
    p_value: float
    converged: bool = True


def _dummy_columns(values, name, min_count=None, other_label="OTHER"):
    """One-hot columns with the most frequent level dropped as reference."""
    values = list(values)
    if min_count is not None:
        freq = {}
        for v in values:
            freq[v] = freq.get(v, 0) + 1
        values = [v if freq[v] >= min_count else other_label for v in values]
    freq = {}
    for v in values:
        freq[v] = freq.get(v, 0) + 1
    reference = sorted(freq, key=lambda v: (-freq[v], v))[0]
    levels = [v for v in sorted(freq) if v != reference]
    columns = []
    matrix = np.zeros((len(values), len(levels)))
    for j, level in enumerate(levels):
        matrix[:, j] = [1.0 if v == level else 0.0 for v in values]
        columns.append(f"{name}={level}")
    return matrix, columns


def build_design(
    rows,
    features=DEFAULT_FEATURES,
    group_key="doc_id",
    min_relation_count=5,
    other_label="OTHER",
) -> Design:
    """Design matrix for predicting binary salience from feature rows.

    Numeric features map to single columns, 'relation' to one-hot dummies
    (labels rarer than min_relation_count pooled into other_label), and
    group_key to fixed per-group intercept dummies. The reference level of
    each categorical is its most frequent value.
    """
    rows = list(rows)
    if not rows:
        raise DataError("cannot build a design matrix from zero rows")
    y = np.array([1.0 if row.salience >= 1 else 0.0 for row in rows])
    blocks = [np.ones((len(rows), 1))]
    columns = [INTERCEPT]
    terms: dict[str, tuple[int, ...]] = {}

    for feature in features:
        start = sum(b.shape[1] for b in blocks)
        if feature in NUMERIC_FEATURES:
            values = [float(getattr(row, feature)) for row in rows]
            blocks.append(np.array(values).reshape(-1, 1))
            columns.append(feature)
            terms[feature] = (start,)
        elif feature == "relation":
            matrix, names = _dummy_columns(
                [row.relation for row in rows], "relation", min_count=min_relation_count,
                other_label=other_label,
            )
            if matrix.shape[1] == 0:
                continue  # single relation level carries no information
            blocks.append(matrix)
            columns.extend(names)
            terms[feature] = tuple(range(start, start + matrix.shape[1]))
        else:
            raise DataError(f"unknown model feature {feature!r}")

    if group_key is not None:
        start = sum(b.shape[1] for b in blocks)
        matrix, names = _dummy_columns([getattr(row, group_key) for row in rows], "doc")
        if matrix.shape[1] > 0:
            blocks.append(matrix)
            columns.extend(names)

    X = np.hstack(blocks)
    _check_full_rank(X, columns)
    return Design(matrix=X, y=y, columns=tuple(columns), terms=terms)


def _check_full_rank(X, columns, tol=1e-10):
    n, p = X.shape
    r = np.linalg.qr(X, mode="r")
    norms = np.sqrt((X * X).sum(axis=0))
    # columns beyond the row count cannot be independent of the earlier ones
    bad = [columns[j] for j in range(min(n, p)) if abs(r[j, j]) < tol * max(1.0, norms[j])]
    bad += [columns[j] for j in range(min(n, p), p)]
    if bad:
        raise SingularDesignError(bad)


def _sigmoid(z):
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def bernoulli_loglik(X, y, beta) -> float:
    """Plain Bernoulli log-likelihood at the given coefficients."""
    p = np.clip(_sigmoid(X @ beta), _PCLIP, 1.0 - _PCLIP)
    return float(np.sum(y * np.log(p) + (1.0 - y) * np.log(1.0 - p)))


def bernoulli_score(X, y, beta) -> np.ndarray:
    """Gradient of the Bernoulli log-likelihood with respect to the coefficients."""
    p = _sigmoid(X @ beta)
    return X.T @ (y - p)


def fit_design(design: Design, ridge=RIDGE, max_iter=MAX_ITER, tol=STEP_TOL) -> ModelFit:
    X, y = design.matrix, design.y
    if len(np.unique(y)) < 2:
        raise DataError("outcome is constant; logistic model needs both classes")
    _check_full_rank(X, design.columns)
    n, p = X.shape
    beta = np.zeros(p)
    converged = False
    for _ in range(max_iter):
        prob = np.clip(_sigmoid(X @ beta), _PCLIP, 1.0 - _PCLIP)
        w = prob * (1.0 - prob)
        hessian = X.T @ (X * w[:, None]) + ridge * np.eye(p)
        gradient = X.T @ (y - prob) - ridge * beta
        step = np.linalg.solve(hessian, gradient)
        beta = beta + step
        if np.max(np.abs(step)) < tol:
            converged = True
            break
    diagnostic = None
    if not converged:
        diagnostic = f"no convergence within {max_iter} iterations"
    fitted = _sigmoid(X @ beta)
    if np.max(np.abs(beta)) > 15 and (fitted.min() < 1e-6 or fitted.max() > 1.0 - 1e-6):
        # the ridge turns diverging coefficients into a spurious fixed point
        converged = False
        diagnostic = ((diagnostic + "; ") if diagnostic else "") + (
            "fitted probabilities at 0/1 with extreme coefficients (perfect separation)"
        )
    ll = bernoulli_loglik(X, y, beta)
    return ModelFit(
        coefficients={c: float(b) for c, b in zip(design.columns, beta)},
        log_likelihood=ll,
        aic=2.0 * p - 2.0 * ll,
        n_params=p,
        converged=converged,
        diagnostic=diagnostic,
    )


def fit_logistic(rows, features=DEFAULT_FEATURES, group_key="doc_id", **design_kwargs) -> ModelFit:
    return fit_design(build_design(rows, features=features, group_key=group_key, **design_kwargs))


def predict_proba(design: Design, fit: ModelFit) -> np.ndarray:
    return _sigmoid(design.matrix @ fit.coef_vector(design.columns))


def training_accuracy(design: Design, fit: ModelFit) -> float:
    predicted = predict_proba(design, fit) >= 0.5
    return float(np.mean(predicted == (design.y >= 0.5)))


def drop_one_lrt(rows, features=DEFAULT_FEATURES, group_key="doc_id", **design_kwargs) -> list[LrtRow]:
    """Refit without each feature in turn; chi-square LRT against the full model.

    Returns one row per dropped feature, sorted ascending by reduced-model AIC.
    Group intercepts are never dropped.
    """
    design = build_design(rows, features=features, group_key=group_key, **design_kwargs)
    full = fit_design(design)
    out = []
    for term in design.terms:
        reduced_design = design.without(term)
        reduced = fit_design(reduced_design)
        df = design.n_params - reduced_design.n_params
        lrt = max(0.0, 2.0 * (full.log_likelihood - reduced.log_likelihood))
        out.append(
            LrtRow(
                feature=term,
                npar_delta=df,
                aic=reduced.aic,
                lrt_statistic=lrt,
                p_value=chi2_sf(lrt, df),
                converged=full.converged and reduced.converged,
            )
        )
    out.sort(key=lambda row: row.aic)
    return out
