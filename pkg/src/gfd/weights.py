"""Weight functions w(t, alpha) parameterising the GFD family."""

from __future__ import annotations

import math
from dataclasses import dataclass

from gfd.errors import DomainError, GFDError, WeightClassError
from gfd.expr import Const, Expr, Pow, Sub, Var, evaluate, free_vars, parse, simplify, substitute, to_string


@dataclass(frozen=True)
class WeightSpec:
    """A weight ``w(t, alpha)``.

    ``formula`` is an expression in ``t``, ``alpha`` and ``tau``; ``tau`` is
    bound to the stored positive scale.  Use the constructors rather than
    building instances by hand.
    """

    kind: str
    formula: Expr
    tau: float = 1.0
    g: Expr | None = None

    def __post_init__(self):
        if not (self.tau > 0 and math.isfinite(self.tau)):
            raise GFDError(f"tau must be a positive finite number, got {self.tau!r}")
        extra = free_vars(self.formula) - {"t", "alpha", "tau"}
        if extra:
            raise GFDError(f"weight formula uses unknown variables {sorted(extra)}")

    # constructors

    @classmethod
    def one(cls) -> "WeightSpec":
        return cls("one", Const(1.0))

    @classmethod
    def alpha_const(cls) -> "WeightSpec":
        return cls("alpha", Var("alpha"))

    @classmethod
    def power_t(cls) -> "WeightSpec":
        return cls("power-t", Pow(Var("t"), Sub(Const(1.0), Var("alpha"))))

    @classmethod
    def tau_scaled(cls, g: Expr | str, tau: float) -> "WeightSpec":
        """``w = g(t, alpha) * tau^(alpha - 1)``."""
        if isinstance(g, str):
            g = parse(g, variables={"t"}, weight=True)
        if "tau" in free_vars(g):
            raise GFDError("g must not depend on tau")
        formula = g * Pow(Var("tau"), Sub(Var("alpha"), Const(1.0)))
        return cls("tau", formula, float(tau), g)

    @classmethod
    def custom(cls, formula: Expr | str, tau: float = 1.0) -> "WeightSpec":
        if isinstance(formula, str):
            formula = parse(formula, variables={"t"}, weight=True)
        return cls("custom", formula, float(tau))

    @classmethod
    def from_string(cls, text: str) -> "WeightSpec":
        """Parse ``one | alpha | power-t | tau:<g>:<tau> | custom:<expr>``."""
        text = text.strip()
        simple = {"one": cls.one, "alpha": cls.alpha_const, "power-t": cls.power_t}
        if text in simple:
            return simple[text]()
        if text.startswith("tau:"):
            g_text, sep, tau_text = text[4:].rpartition(":")
            if not sep or not g_text:
                raise GFDError(f"expected tau:<g>:<tau>, got {text!r}")
            try:
                tau = float(tau_text)
            except ValueError:
                raise GFDError(f"invalid tau value {tau_text!r}") from None
            return cls.tau_scaled(g_text, tau)
        if text.startswith("custom:"):
            return cls.custom(text[7:])
        raise GFDError(f"unknown weight {text!r}")

    # queries

    def __str__(self) -> str:
        if self.kind == "tau":
            return f"tau:{to_string(self.g)}:{self.tau!r}"
        if self.kind == "custom":
            return f"custom:{to_string(self.formula)}"
        return self.kind

    @property
    def depends_on_t(self) -> bool:
        return "t" in free_vars(self.formula)

    def expr(self, alpha: float, var: str = "t") -> Expr:
        """The weight at fixed ``alpha`` as an expression in ``var``."""
        e = substitute(self.formula, {"alpha": Const(alpha), "tau": Const(self.tau)})
        if var != "t":
            e = substitute(e, {"t": Var(var)})
        return simplify(e)

    def value(self, t: float, alpha: float) -> float:
        try:
            return evaluate(self.formula, {"t": t, "alpha": alpha, "tau": self.tau})
        except DomainError as exc:
            raise DomainError(f"weight {self} undefined at t={t!r}, alpha={alpha!r}: {exc}") from None

    def constant_value(self, alpha: float) -> float:
        """Value of a t-independent weight; raises for t-dependent ones."""
        if self.depends_on_t:
            raise WeightClassError(f"weight {self} depends on t; a t-constant weight is required")
        return evaluate(self.formula, {"alpha": alpha, "tau": self.tau})


ONE = WeightSpec.one()
ALPHA = WeightSpec.alpha_const()
POWER_T = WeightSpec.power_t()
