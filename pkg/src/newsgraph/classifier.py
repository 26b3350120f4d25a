"""Neural detection head: a two-layer MLP trained with Adam.

The head maps a standardized document embedding through one ReLU hidden
layer (width 32 by default) to two softmax outputs, real vs fake, trained
on mean cross-entropy.  Everything is plain numpy so training is
bit-reproducible given a seed, and models serialize to a self-describing
JSON file whose floats round-trip exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .encode import DocEmbedding, Standardizer, fit_standardizer, standardize
from .errors import (MissingClass, ModelFormatError, NumericalError,
                     ShapeError)

LABEL_NAMES = ["real", "fake"]
REAL, FAKE = 0, 1
MODEL_FORMAT_VERSION = 1
PROB_FLOOR = 1e-12


@dataclass
class Prediction:
    p_real: float
    p_fake: float

    def __getitem__(self, label: int) -> float:
        return (self.p_real, self.p_fake)[label]

    @property
    def argmax(self) -> int:
        return FAKE if self.p_fake > self.p_real else REAL


@dataclass
class TrainConfig:
    learning_rate: float = 1e-4
    beta1: float = 0.9
    beta2: float = 0.999
    adam_epsilon: float = 1e-8
    batch_size: int = 64
    epochs: int = 20
    rng_seed: int = 0
    hidden_dim: int = 32

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")


@dataclass
class MlpModel:
    W1: np.ndarray            # d x hidden
    b1: np.ndarray            # hidden
    W2: np.ndarray            # hidden x 2
    b2: np.ndarray            # 2
    standardizer: Standardizer
    pipeline_config: dict = field(default_factory=dict)
    label_names: list = field(default_factory=lambda: list(LABEL_NAMES))

    @property
    def input_dim(self) -> int:
        return self.W1.shape[0]


def init_mlp(d: int, seed: int, hidden: int = 32) -> MlpModel:
    """Glorot-uniform weights from a seeded generator; zero biases."""
    if d < 1:
        raise ValueError(f"input dimension must be >= 1, got {d}")
    rng = np.random.default_rng(seed)
    lim1 = np.sqrt(6.0 / (d + hidden))
    lim2 = np.sqrt(6.0 / (hidden + 2))
    W1 = rng.uniform(-lim1, lim1, size=(d, hidden))
    W2 = rng.uniform(-lim2, lim2, size=(hidden, 2))
    identity = Standardizer(mu=np.zeros(d), sigma=np.ones(d), epsilon=1e-8)
    return MlpModel(W1=W1, b1=np.zeros(hidden), W2=W2, b2=np.zeros(2),
                    standardizer=identity)


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=-1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=-1, keepdims=True)


def forward(model: MlpModel, u_std: np.ndarray) -> Prediction:
    """Softmax probabilities for one standardized embedding."""
    if u_std.shape != (model.input_dim,):
        raise ShapeError(f"expected input of shape ({model.input_dim},), "
                         f"got {u_std.shape}")
    if not np.isfinite(u_std).all():
        raise NumericalError("non-finite values in classifier input")
    hidden = np.maximum(u_std @ model.W1 + model.b1, 0.0)
    logits = hidden @ model.W2 + model.b2
    probs = _softmax(logits)
    return Prediction(p_real=float(probs[REAL]), p_fake=float(probs[FAKE]))


def loss(pred: Prediction, label: int) -> float:
    """Cross-entropy of one prediction, probability floored at 1e-12."""
    if label not in (REAL, FAKE):
        raise ValueError(f"label must be 0 or 1, got {label}")
    return float(-np.log(max(pred[label], PROB_FLOOR)))


def _forward_batch(model: MlpModel, U: np.ndarray):
    Z1 = U @ model.W1 + model.b1
    A1 = np.maximum(Z1, 0.0)
    logits = A1 @ model.W2 + model.b2
    probs = _softmax(logits)
    return Z1, A1, probs


def batch_loss(model: MlpModel, U: np.ndarray, labels: np.ndarray) -> float:
    """Mean cross-entropy of a standardized batch."""
    _, _, probs = _forward_batch(model, U)
    picked = np.maximum(probs[np.arange(len(labels)), labels], PROB_FLOOR)
    return float(-np.log(picked).mean())


def batch_gradients(model: MlpModel, U: np.ndarray, labels: np.ndarray):
    """Analytic gradients of the mean cross-entropy w.r.t. all parameters."""
    B = U.shape[0]
    Z1, A1, probs = _forward_batch(model, U)
    G = probs.copy()
    G[np.arange(B), labels] -= 1.0
    G /= B
    dW2 = A1.T @ G
    db2 = G.sum(axis=0)
    dA1 = G @ model.W2.T
    dZ1 = dA1 * (Z1 > 0.0)
    dW1 = U.T @ dZ1
    db1 = dZ1.sum(axis=0)
    return dW1, db1, dW2, db2


class _Adam:
    """Adam state over a list of parameter arrays (fixed update order)."""

    def __init__(self, params, cfg: TrainConfig):
        self.cfg = cfg
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]
        self.t = 0

    def step(self, params, grads):
        c = self.cfg
        self.t += 1
        for i, (p, g) in enumerate(zip(params, grads)):
            self.m[i] = c.beta1 * self.m[i] + (1 - c.beta1) * g
            self.v[i] = c.beta2 * self.v[i] + (1 - c.beta2) * g * g
            m_hat = self.m[i] / (1 - c.beta1 ** self.t)
            v_hat = self.v[i] / (1 - c.beta2 ** self.t)
            p -= c.learning_rate * m_hat / (np.sqrt(v_hat) + c.adam_epsilon)


def train(features: list[tuple[DocEmbedding, int]], cfg: TrainConfig,
          pipeline_config: dict | None = None,
          epoch_losses: list | None = None) -> MlpModel:
    """Fit the standardizer, then run mini-batch Adam on cross-entropy.

    Deterministic given ``cfg.rng_seed``: the shuffle order and every
    reduction are fixed.  Raises :class:`MissingClass` unless both classes
    appear in ``features``.  Pass a list as ``epoch_losses`` to collect
    the full-set mean loss after each epoch (does not affect training).
    """
    if not features:
        raise MissingClass("training set is empty")
    labels_present = {label for _, label in features}
    for cls in (REAL, FAKE):
        if cls not in labels_present:
            raise MissingClass(f"class {cls} ({LABEL_NAMES[cls]}) missing "
                               f"from training set")
    embeddings = [e for e, _ in features]
    std = fit_standardizer(embeddings)
    U = np.stack([standardize(e, std) for e in embeddings])
    y = np.array([label for _, label in features], dtype=np.int64)

    model = init_mlp(U.shape[1], cfg.rng_seed, hidden=cfg.hidden_dim)
    model.standardizer = std
    model.pipeline_config = dict(pipeline_config or {})

    rng = np.random.default_rng(cfg.rng_seed)
    params = [model.W1, model.b1, model.W2, model.b2]
    adam = _Adam(params, cfg)
    for _ in range(cfg.epochs):
        order = rng.permutation(len(U))
        for start in range(0, len(U), cfg.batch_size):
            batch = order[start:start + cfg.batch_size]
            grads = batch_gradients(model, U[batch], y[batch])
            adam.step(params, grads)
        if epoch_losses is not None:
            epoch_losses.append(batch_loss(model, U, y))
    return model


def predict(model: MlpModel, u: DocEmbedding) -> Prediction:
    """Standardize and classify one document embedding."""
    return forward(model, standardize(u, model.standardizer))


def _layer_dict(W: np.ndarray, b: np.ndarray) -> dict:
    return {"rows": int(W.shape[0]), "cols": int(W.shape[1]),
            "weights": [float(x) for x in W.ravel(order="C")],
            "bias": [float(x) for x in b]}


def save_model(model: MlpModel, path) -> None:
    """Write the model as a version-1 JSON document with exact floats."""
    doc = {
        "format_version": MODEL_FORMAT_VERSION,
        "pipeline_config": model.pipeline_config,
        "standardizer": {
            "mu": [float(x) for x in model.standardizer.mu],
            "sigma": [float(x) for x in model.standardizer.sigma],
            "epsilon": float(model.standardizer.epsilon),
        },
        "layers": [_layer_dict(model.W1, model.b1),
                   _layer_dict(model.W2, model.b2)],
        "label_names": list(model.label_names),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, separators=(",", ":"))
        fh.write("\n")


def _parse_layer(entry: dict, index: int) -> tuple[np.ndarray, np.ndarray]:
    try:
        rows, cols = int(entry["rows"]), int(entry["cols"])
        W = np.array(entry["weights"], dtype=np.float64).reshape(rows, cols)
        b = np.array(entry["bias"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"layer {index} is malformed: {exc}")
    if b.shape != (cols,):
        raise ModelFormatError(f"layer {index}: bias length {b.shape[0]} "
                               f"does not match cols {cols}")
    return W, b


def load_model(path) -> MlpModel:
    """Load a model file; raises :class:`ModelFormatError` on any defect."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"not valid JSON: {exc}")
    if not isinstance(doc, dict):
        raise ModelFormatError("model file must hold a JSON object")
    version = doc.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ModelFormatError(
            f"unsupported format_version {version!r}; "
            f"supported versions: [{MODEL_FORMAT_VERSION}]")
    try:
        std_doc = doc["standardizer"]
        std = Standardizer(mu=np.array(std_doc["mu"], dtype=np.float64),
                           sigma=np.array(std_doc["sigma"], dtype=np.float64),
                           epsilon=float(std_doc["epsilon"]))
        layers = doc["layers"]
        if len(layers) != 2:
            raise ModelFormatError(f"expected 2 layers, found {len(layers)}")
        W1, b1 = _parse_layer(layers[0], 0)
        W2, b2 = _parse_layer(layers[1], 1)
        label_names = list(doc["label_names"])
        pipeline_config = dict(doc.get("pipeline_config", {}))
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"schema violation: {exc}")
    if W1.shape[1] != W2.shape[0] or W2.shape[1] != 2:
        raise ModelFormatError(f"inconsistent layer shapes "
                               f"{W1.shape} -> {W2.shape}")
    for arr in (W1, b1, W2, b2, std.mu, std.sigma):
        if not np.isfinite(arr).all():
            raise ModelFormatError("non-finite parameter values")
    return MlpModel(W1=W1, b1=b1, W2=W2, b2=b2, standardizer=std,
                    pipeline_config=pipeline_config, label_names=label_names)
