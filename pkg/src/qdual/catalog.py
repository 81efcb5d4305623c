"""Built-in presentations: the quantum hat algebras, their declared tilde
forms, the classical targets and the generator maps between the limits.

Every entry is stored as presentation-file text and parsed (and therefore
Hopf-checked) the first time it is requested; ``catalog_get`` then also runs
the overlap check.  Entries are cached and treated as immutable.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field
from itertools import permutations

from .cli.presfile import parse_presentation_file
from .errors import BadParameter, UnknownEntry, VerificationFailed
from .ncalg import NcElement, Presentation, overlap_check

N_RANGE = range(1, 5)


@dataclass
class CatalogEntry:
    name: str
    presentation: Presentation
    tilde_recipe: dict = field(default_factory=dict)    # tilde generator -> hat expression
    target_name: str | None = None
    map_images: dict = field(default_factory=dict)      # tilde generator -> target expression
    paper_section: str = ""
    tilde_text: str = ""
    regeneration: dict = field(default_factory=dict)    # hat generator -> expression in dd_*
    excluded: tuple = ()                                # generators the tilde form leaves out
    role: str = "quantum"                               # or "classical"
    even: bool = False                                  # classical target read as an even subalgebra
    note: str = ""

    @property
    def kind(self) -> str:
        return self.presentation.classification

    @property
    def tilde_generators(self) -> dict:
        """Hat elements spanning the declared tilde form (QUEA entries)."""
        return {g: self.presentation.parse(e) for g, e in self.tilde_recipe.items()}

    @property
    def classical_target(self) -> Presentation | None:
        if self.target_name is None:
            return None
        return catalog_get(self.target_name).presentation

    @property
    def generator_map(self):
        if self.target_name is None:
            return None
        hit = self.__dict__.get("_map")
        if hit is None:
            from .classical import GeneratorMap, specialize
            from .drinfeld import tilde_F_presentation, tilde_presentation

            build = tilde_presentation if self.kind == "QUEA" else tilde_F_presentation
            pp = specialize(build(self).presentation)
            t = self.classical_target
            hit = GeneratorMap(pp, t, {g: t.parse(e) for g, e in self.map_images.items()})
            self.__dict__["_map"] = hit
        return hit


# texts --------------------------------------------------------------------------

def _hopf_lines(kind: str, rows: list) -> str:
    return "\n".join(f"{kind} {g} = {v}" for g, v in rows)


def _block(*parts: str) -> str:
    out = []
    for p in parts:
        out.extend(line.strip() for line in p.strip().splitlines())
    return "\n".join(out) + "\n"


# quantum sl2, adjoint form: K = 1 + (q-1)H, Gamma = (K - K^-1)/(q - q^-1)
_U_SL2 = """
algebra Uq_sl2_hat
kind QUEA
generators F, H, Gamma, E
alias K = 1 + (q-1)*H
alias Kinv = K - (q-q^-1)*Gamma
relation Gamma*H - H*Gamma
relation K*Kinv - 1
relation K*F - q^-2*F*K
relation K*E - q^2*E*K
relation Gamma*F - (q^-2*F*K - q^2*F*Kinv)/(q-q^-1)
relation Gamma*E - (q^2*E*K - q^-2*E*Kinv)/(q-q^-1)
relation E*F - F*E - Gamma
coproduct F = F @ Kinv + 1 @ F
coproduct H = H @ 1 + K @ H
coproduct Gamma = Gamma @ K + Kinv @ Gamma
coproduct E = E @ 1 + K @ E
counit F = 0
counit H = 0
counit Gamma = 0
counit E = 0
antipode F = -F*K
antipode H = -Kinv*H
antipode Gamma = -Gamma
antipode E = -Kinv*E
lattice span: F H Gamma E
window H, Gamma
"""

_U_SL2_TILDE = """
algebra Utilde_sl2
kind QFA
generators Fdot, Gdot, K, Edot
alias Kinv = K - (1+q^-1)*Gdot
relation K*Gdot - Gdot*K
relation K*K - 1 - (1+q^-1)*Gdot*K
relation K*Fdot - q^-2*Fdot*K
relation K*Edot - q^2*Edot*K
relation Gdot*Fdot - q^-2*Fdot*Gdot + (q-1)*(q+q^-1)*Fdot*Kinv
relation Gdot*Edot - q^2*Edot*Gdot - (q-1)*(q+q^-1)*Edot*Kinv
relation Edot*Fdot - Fdot*Edot - (q-1)*Gdot
coproduct Fdot = Fdot @ Kinv + 1 @ Fdot
coproduct Gdot = Gdot @ K + Kinv @ Gdot
coproduct K = K @ K
coproduct Edot = Edot @ 1 + K @ Edot
counit Fdot = 0
counit Gdot = 0
counit K = 1
counit Edot = 0
antipode Fdot = -Fdot*K
antipode Gdot = -Gdot
antipode K = Kinv
antipode Edot = -Kinv*Edot
lattice free: Fdot Gdot K Edot
"""

# simply connected form: a square root L of K, with D = (L - 1)/(q-1)
_U_SL2_SC = """
algebra Uq_sl2_hat_sc
kind QUEA
generators F, D, Gamma, E
weight Gamma = 2
alias L = 1 + (q-1)*D
alias Linv = L*L*L - (q-q^-1)*L*Gamma
alias K = L*L
alias Kinv = Linv*Linv
relation Gamma*D - D*Gamma
relation L*Linv - 1
relation L*F - q^-1*F*L
relation L*E - q*E*L
relation Gamma*F - q^2*F*Gamma + (q+q^-1)*F*K
relation Gamma*E - q^-2*E*Gamma - (q+q^-1)*E*K
relation E*F - F*E - Gamma
coproduct F = F @ Kinv + 1 @ F
coproduct D = D @ 1 + L @ D
coproduct Gamma = Gamma @ K + Kinv @ Gamma
coproduct E = E @ 1 + K @ E
counit F = 0
counit D = 0
counit Gamma = 0
counit E = 0
antipode F = -F*K
antipode D = -Linv*D
antipode Gamma = -Gamma
antipode E = -Kinv*E
lattice span: F D Gamma E
window D, Gamma
"""

_U_SL2_SC_TILDE = """
algebra Utilde_sl2_sc
kind QFA
generators Fdot, Gdot, L, Edot
weight Gdot = 2
alias Linv = L*L*L - (1+q^-1)*L*Gdot
alias K = L*L
alias Kinv = Linv*Linv
relation L*Gdot - Gdot*L
relation L*Linv - 1
relation L*Fdot - q^-1*Fdot*L
relation L*Edot - q*Edot*L
relation Gdot*Fdot - q^2*Fdot*Gdot + (q-1)*(q+q^-1)*Fdot*K
relation Gdot*Edot - q^-2*Edot*Gdot - (q-1)*(q+q^-1)*Edot*K
relation Edot*Fdot - Fdot*Edot - (q-1)*Gdot
coproduct Fdot = Fdot @ Kinv + 1 @ Fdot
coproduct Gdot = Gdot @ K + Kinv @ Gdot
coproduct L = L @ L
coproduct Edot = Edot @ 1 + K @ Edot
counit Fdot = 0
counit Gdot = 0
counit L = 1
counit Edot = 0
antipode Fdot = -Fdot*K
antipode Gdot = -Gdot
antipode L = Linv
antipode Edot = -Kinv*Edot
lattice free: Fdot Gdot L Edot
"""

_F_SL2 = """
algebra Fq_SL2_hat
kind QFA
generators b, c, a, d
relation a*b - q*b*a
relation a*c - q*c*a
relation b*d - q*d*b
relation c*d - q*d*c
relation b*c - c*b
relation a*d - d*a - (q-q^-1)*b*c
relation a*d - q*b*c - 1
coproduct a = a @ a + b @ c
coproduct b = a @ b + b @ d
coproduct c = c @ a + d @ c
coproduct d = c @ b + d @ d
counit a = 1
counit b = 0
counit c = 0
counit d = 1
antipode a = d
antipode b = -q^-1*b
antipode c = -q*c
antipode d = a
lattice free: b c a d
"""

_F_SL2_TILDE = """
algebra Ftilde_SL2
kind QUEA
generators F, Hp, Hm, E
relation Hp*E - q*E*Hp - E
relation Hp*F - q*F*Hp - F
relation E*Hm - q*Hm*E - E
relation F*Hm - q*Hm*F - F
relation E*F - F*E
relation Hm*Hp - Hp*Hm + (q-q^-1)*E*F
relation Hp*Hm - q*E*F + (Hp + Hm)/(q-1)
coproduct F = F @ 1 + 1 @ F + (q-1)*(F @ Hp + Hm @ F)
coproduct Hp = Hp @ 1 + 1 @ Hp + (q-1)*(Hp @ Hp + E @ F)
coproduct Hm = Hm @ 1 + 1 @ Hm + (q-1)*(Hm @ Hm + F @ E)
coproduct E = E @ 1 + 1 @ E + (q-1)*(Hp @ E + E @ Hm)
counit F = 0
counit Hp = 0
counit Hm = 0
counit E = 0
antipode F = -q*F
antipode Hp = Hm
antipode Hm = Hp
antipode E = -q^-1*E
lattice span: F Hp Hm E
window Hp, Hm
"""

_F_SSL2_STAR = """
algebra {name}
kind POISSON
generators x, z, zinv, y
inverse z, zinv
coproduct x = x @ zinv + z @ x
coproduct z = z @ z
coproduct zinv = zinv @ zinv
coproduct y = y @ zinv + z @ y
counit x = 0
counit z = 1
counit zinv = 1
counit y = 0
antipode x = -x
antipode z = zinv
antipode zinv = z
antipode y = -y
lattice free: x z zinv y
bracket x, y = {xy}
bracket z, x = z*x
bracket z, y = -z*y
"""

_U_SL2_STAR = """
algebra U_sl2star
kind COPOISSON
generators f, h, e
relation e*h - h*e + e
relation f*h - h*f + f
relation e*f - f*e
coproduct f = f @ 1 + 1 @ f
coproduct h = h @ 1 + 1 @ h
coproduct e = e @ 1 + 1 @ e
counit f = 0
counit h = 0
counit e = 0
antipode f = -f
antipode h = -h
antipode e = -e
lattice free: f h e
cobracket f = 2*(f @ h - h @ f)
cobracket h = e @ f - f @ e
cobracket e = 2*(h @ e - e @ h)
"""

# Euclidean group E2 -----------------------------------------------------------

_U_E2_S = """
algebra Uq_e2_s_hat
kind QUEA
generators F, Dp, Dm, E
alias L = 1 + (q-1)*Dp
alias Linv = 1 + (q-1)*Dm
relation Dm*Dp - Dp*Dm
relation L*Linv - 1
relation L*F - q^-1*F*L
relation L*E - q*E*L
relation Linv*F - q*F*Linv
relation Linv*E - q^-1*E*Linv
relation E*F - F*E
coproduct F = F @ Linv*Linv + 1 @ F
coproduct Dp = Dp @ 1 + L @ Dp
coproduct Dm = Dm @ 1 + Linv @ Dm
coproduct E = E @ 1 + L*L @ E
counit F = 0
counit Dp = 0
counit Dm = 0
counit E = 0
antipode F = -F*L*L
antipode Dp = Dm
antipode Dm = Dp
antipode E = -Linv*Linv*E
lattice span: F Dp Dm E
window Dp, Dm
"""

_U_E2_S_TILDE = """
algebra Utilde_e2_s
kind QFA
generators calF, calL, calLinv, calE
inverse calL, calLinv
relation calE*calF - calF*calE
relation calL*calF - q^-1*calF*calL
relation calL*calE - q*calE*calL
relation calLinv*calF - q*calF*calLinv
relation calLinv*calE - q^-1*calE*calLinv
coproduct calF = calF @ calLinv + calL @ calF
coproduct calL = calL @ calL
coproduct calLinv = calLinv @ calLinv
coproduct calE = calE @ calLinv + calL @ calE
counit calF = 0
counit calL = 1
counit calLinv = 1
counit calE = 0
antipode calF = -q*calF
antipode calL = calLinv
antipode calLinv = calL
antipode calE = -q^-1*calE
lattice free: calF calL calLinv calE
"""

_U_E2_A = """
algebra Uq_e2_a_hat
kind QUEA
generators F, Hp, Hm, E
alias K = 1 + (q-1)*Hp
alias Kinv = 1 + (q-1)*Hm
relation Hm*Hp - Hp*Hm
relation K*Kinv - 1
relation K*F - q^-2*F*K
relation K*E - q^2*E*K
relation Kinv*F - q^2*F*Kinv
relation Kinv*E - q^-2*E*Kinv
relation E*F - F*E
coproduct F = F @ Kinv + 1 @ F
coproduct Hp = Hp @ 1 + K @ Hp
coproduct Hm = Hm @ 1 + Kinv @ Hm
coproduct E = E @ 1 + K @ E
counit F = 0
counit Hp = 0
counit Hm = 0
counit E = 0
antipode F = -F*K
antipode Hp = Hm
antipode Hm = Hp
antipode E = -Kinv*E
lattice span: F Hp Hm E
window Hp, Hm
"""

_U_E2_A_TILDE = """
algebra Utilde_e2_a
kind QFA
generators Fdot, K, Kinv, Edot
inverse K, Kinv
relation Edot*Fdot - Fdot*Edot
relation K*Fdot - q^-2*Fdot*K
relation K*Edot - q^2*Edot*K
relation Kinv*Fdot - q^2*Fdot*Kinv
relation Kinv*Edot - q^-2*Edot*Kinv
coproduct Fdot = Fdot @ Kinv + 1 @ Fdot
coproduct K = K @ K
coproduct Kinv = Kinv @ Kinv
coproduct Edot = Edot @ 1 + K @ Edot
counit Fdot = 0
counit K = 1
counit Kinv = 1
counit Edot = 0
antipode Fdot = -Fdot*K
antipode K = Kinv
antipode Kinv = K
antipode Edot = -Kinv*Edot
lattice free: Fdot K Kinv Edot
"""

_F_E2 = """
algebra Fq_E2_hat
kind QFA
generators b, a, ainv, c
inverse a, ainv
relation a*b - q*b*a
relation a*c - q*c*a
relation b*c - c*b
relation ainv*b - q^-1*b*ainv
relation ainv*c - q^-1*c*ainv
coproduct b = b @ ainv + a @ b
coproduct a = a @ a
coproduct ainv = ainv @ ainv
coproduct c = c @ a + ainv @ c
counit b = 0
counit a = 1
counit ainv = 1
counit c = 0
antipode b = -q^-1*b
antipode a = ainv
antipode ainv = a
antipode c = -q*c
lattice free: b a ainv c
"""

_F_E2_TILDE = """
algebra Ftilde_E2
kind QUEA
generators E, Dp, Dm, F
relation Dp*E - q*E*Dp - E
relation Dp*F - q*F*Dp - F
relation E*Dm - q*Dm*E - E
relation F*Dm - q*Dm*F - F
relation F*E - E*F
relation Dm*Dp - Dp*Dm
relation Dp*Dm + (Dp + Dm)/(q-1)
coproduct E = E @ 1 + 1 @ E + (q-1)*(E @ Dm + Dp @ E)
coproduct Dp = Dp @ 1 + 1 @ Dp + (q-1)*Dp @ Dp
coproduct Dm = Dm @ 1 + 1 @ Dm + (q-1)*Dm @ Dm
coproduct F = F @ 1 + 1 @ F + (q-1)*(F @ Dp + Dm @ F)
counit E = 0
counit Dp = 0
counit Dm = 0
counit F = 0
antipode E = -q^-1*E
antipode Dp = Dm
antipode Dm = Dp
antipode F = -q*F
lattice span: E Dp Dm F
window Dp, Dm
"""

# the even part, generated by beta = b a, alpha = a^2, gamma = a^-1 c
_F_AE2 = """
algebra Fq_aE2_hat
kind QFA
generators beta, alpha, alphainv, gamma
inverse alpha, alphainv
relation alpha*beta - q^2*beta*alpha
relation alpha*gamma - q^2*gamma*alpha
relation beta*gamma - q^2*gamma*beta
relation alphainv*beta - q^-2*beta*alphainv
relation alphainv*gamma - q^-2*gamma*alphainv
coproduct beta = beta @ 1 + alpha @ beta
coproduct alpha = alpha @ alpha
coproduct alphainv = alphainv @ alphainv
coproduct gamma = gamma @ 1 + alphainv @ gamma
counit beta = 0
counit alpha = 1
counit alphainv = 1
counit gamma = 0
antipode beta = -alphainv*beta
antipode alpha = alphainv
antipode alphainv = alpha
antipode gamma = -alpha*gamma
lattice free: beta alpha alphainv gamma
"""

_F_AE2_TILDE = """
algebra Ftilde_aE2
kind QUEA
generators E, Hp, Hm, F
relation E*F - q^2*F*E
relation Hp*E - q^2*E*Hp - (q+1)*E
relation Hp*F - q^2*F*Hp - (q+1)*F
relation E*Hm - q^2*Hm*E - (q+1)*E
relation F*Hm - q^2*Hm*F - (q+1)*F
relation Hm*Hp - Hp*Hm
relation Hp*Hm + (Hp + Hm)/(q-1)
coproduct E = E @ 1 + 1 @ E + (q-1)*Hp @ E
coproduct Hp = Hp @ 1 + 1 @ Hp + (q-1)*Hp @ Hp
coproduct Hm = Hm @ 1 + 1 @ Hm + (q-1)*Hm @ Hm
coproduct F = F @ 1 + 1 @ F + (q-1)*Hm @ F
counit E = 0
counit Hp = 0
counit Hm = 0
counit F = 0
antipode E = -(1 + (q-1)*Hm)*E
antipode Hp = Hm
antipode Hm = Hp
antipode F = -(1 + (q-1)*Hp)*F
lattice span: E Hp Hm F
window Hp, Hm
"""

_U_E2_STAR = """
algebra U_e2star
kind COPOISSON
generators f, h, e
relation e*h - h*e + 2*e
relation f*h - h*f + 2*f
relation e*f - f*e
coproduct f = f @ 1 + 1 @ f
coproduct h = h @ 1 + 1 @ h
coproduct e = e @ 1 + 1 @ e
counit f = 0
counit h = 0
counit e = 0
antipode f = -f
antipode h = -h
antipode e = -e
lattice free: f h e
cobracket f = f @ h - h @ f
cobracket h = 0
cobracket e = h @ e - e @ h
"""


# Heisenberg groups, generated for each n --------------------------------------

def _idx(stem: str, n: int) -> list:
    return [f"{stem}{i}" for i in range(1, n + 1)]


def _commuting(xs: list, ys: list | None = None) -> list:
    """Relations saying the given generators commute pairwise."""
    out = []
    if ys is None:
        for i, x in enumerate(xs):
            for y in xs[i + 1:]:
                out.append(f"relation {y}*{x} - {x}*{y}")
    else:
        for x in xs:
            for y in ys:
                out.append(f"relation {y}*{x} - {x}*{y}")
    return out


def _u_hn_s(n: int) -> str:
    F, E = _idx("F", n), _idx("E", n)
    lines = [f"algebra Uq_hn_s_hat({n})", "kind QUEA",
             "generators " + ", ".join(F + ["D", "Gamma"] + E), "weight Gamma = 2",
             "alias L = 1 + (q-1)*D", "alias Linv = L*L*L - (q-q^-1)*L*Gamma",
             "alias K = L*L", "alias Kinv = Linv*Linv",
             "relation Gamma*D - D*Gamma", "relation L*Linv - 1"]
    lines += _commuting(F, ["D", "Gamma"]) + _commuting(["D", "Gamma"], E)
    lines += _commuting(F) + _commuting(E)
    for i in range(n):
        for j in range(n):
            lines.append(f"relation {E[i]}*{F[j]} - {F[j]}*{E[i]}" + (" - Gamma" if i == j else ""))
    rows = [(f, f"{f} @ 1 + Kinv @ {f}") for f in F] + [
        ("D", "D @ 1 + L @ D"), ("Gamma", "Gamma @ K + Kinv @ Gamma")] + [
        (e, f"{e} @ K + 1 @ {e}") for e in E]
    lines.append(_hopf_lines("coproduct", rows))
    lines.append(_hopf_lines("counit", [(g, "0") for g in F + ["D", "Gamma"] + E]))
    rows = [(f, f"-K*{f}") for f in F] + [("D", "-Linv*D"), ("Gamma", "-Gamma")] + [
        (e, f"-{e}*Kinv") for e in E]
    lines.append(_hopf_lines("antipode", rows))
    lines += ["lattice span: " + " ".join(F + ["D", "Gamma"] + E), "window D, Gamma"]
    return _block(*lines)


def _u_hn_s_tilde(n: int) -> str:
    F, E = _idx("Fdot", n), _idx("Edot", n)
    lines = [f"algebra Utilde_hn_s({n})", "kind QFA",
             "generators " + ", ".join(F + ["Gdot", "L"] + E),
             "alias Linv = L*L*L - (1+q^-1)*L*Gdot", "alias K = L*L", "alias Kinv = Linv*Linv",
             "relation L*Gdot - Gdot*L", "relation L*Linv - 1"]
    lines += _commuting(F, ["Gdot", "L"]) + _commuting(["Gdot", "L"], E)
    lines += _commuting(F) + _commuting(E)
    for i in range(n):
        for j in range(n):
            lines.append(f"relation {E[i]}*{F[j]} - {F[j]}*{E[i]}" + (" - (q-1)*Gdot" if i == j else ""))
    rows = [(f, f"{f} @ 1 + Kinv @ {f}") for f in F] + [
        ("Gdot", "Gdot @ K + Kinv @ Gdot"), ("L", "L @ L")] + [(e, f"{e} @ K + 1 @ {e}") for e in E]
    lines.append(_hopf_lines("coproduct", rows))
    lines.append(_hopf_lines("counit", [(g, "1" if g == "L" else "0") for g in F + ["Gdot", "L"] + E]))
    rows = [(f, f"-K*{f}") for f in F] + [("Gdot", "-Gdot"), ("L", "Linv")] + [
        (e, f"-{e}*Kinv") for e in E]
    lines.append(_hopf_lines("antipode", rows))
    lines.append("lattice free: " + " ".join(F + ["Gdot", "L"] + E))
    return _block(*lines)


def _u_hn_a(n: int) -> str:
    F, E = _idx("F", n), _idx("E", n)
    lines = [f"algebra Uq_hn_a_hat({n})", "kind QUEA",
             "generators " + ", ".join(F + ["H", "Gamma"] + E),
             "alias K = 1 + (q-1)*H", "alias Kinv = K - (q-q^-1)*Gamma",
             "relation Gamma*H - H*Gamma", "relation K*Kinv - 1"]
    lines += _commuting(F, ["H", "Gamma"]) + _commuting(["H", "Gamma"], E)
    lines += _commuting(F) + _commuting(E)
    for i in range(n):
        for j in range(n):
            lines.append(f"relation {E[i]}*{F[j]} - {F[j]}*{E[i]}" + (" - Gamma" if i == j else ""))
    rows = [(f, f"{f} @ 1 + Kinv @ {f}") for f in F] + [
        ("H", "H @ 1 + K @ H"), ("Gamma", "Gamma @ K + Kinv @ Gamma")] + [
        (e, f"{e} @ K + 1 @ {e}") for e in E]
    lines.append(_hopf_lines("coproduct", rows))
    lines.append(_hopf_lines("counit", [(g, "0") for g in F + ["H", "Gamma"] + E]))
    rows = [(f, f"-K*{f}") for f in F] + [("H", "-Kinv*H"), ("Gamma", "-Gamma")] + [
        (e, f"-{e}*Kinv") for e in E]
    lines.append(_hopf_lines("antipode", rows))
    lines += ["lattice span: " + " ".join(F + ["H", "Gamma"] + E), "window H, Gamma"]
    return _block(*lines)


def _u_hn_a_tilde(n: int) -> str:
    F, E = _idx("Fdot", n), _idx("Edot", n)
    lines = [f"algebra Utilde_hn_a({n})", "kind QFA",
             "generators " + ", ".join(F + ["Gdot", "K"] + E),
             "alias Kinv = K - (1+q^-1)*Gdot",
             "relation K*Gdot - Gdot*K", "relation K*K - 1 - (1+q^-1)*Gdot*K"]
    lines += _commuting(F, ["Gdot", "K"]) + _commuting(["Gdot", "K"], E)
    lines += _commuting(F) + _commuting(E)
    for i in range(n):
        for j in range(n):
            lines.append(f"relation {E[i]}*{F[j]} - {F[j]}*{E[i]}" + (" - (q-1)*Gdot" if i == j else ""))
    rows = [(f, f"{f} @ 1 + Kinv @ {f}") for f in F] + [
        ("Gdot", "Gdot @ K + Kinv @ Gdot"), ("K", "K @ K")] + [(e, f"{e} @ K + 1 @ {e}") for e in E]
    lines.append(_hopf_lines("coproduct", rows))
    lines.append(_hopf_lines("counit", [(g, "1" if g == "K" else "0") for g in F + ["Gdot", "K"] + E]))
    rows = [(f, f"-K*{f}") for f in F] + [("Gdot", "-Gdot"), ("K", "Kinv")] + [
        (e, f"-{e}*Kinv") for e in E]
    lines.append(_hopf_lines("antipode", rows))
    lines.append("lattice free: " + " ".join(F + ["Gdot", "K"] + E))
    return _block(*lines)


def _f_hn(n: int) -> str:
    A, B = _idx("a", n), _idx("b", n)
    lines = [f"algebra Fq_Hn_hat({n})", "kind QFA", "generators " + ", ".join(A + ["c"] + B)]
    lines += _commuting(A) + _commuting(B) + _commuting(A, B)
    lines += [f"relation {x}*c - c*{x} - (q-1)*{x}" for x in A + B]
    rows = [(x, f"{x} @ 1 + 1 @ {x}") for x in A] + [
        ("c", "c @ 1 + 1 @ c + " + " + ".join(f"{a} @ {b}" for a, b in zip(A, B)))] + [
        (x, f"{x} @ 1 + 1 @ {x}") for x in B]
    lines.append(_hopf_lines("coproduct", rows))
    lines.append(_hopf_lines("counit", [(g, "0") for g in A + ["c"] + B]))
    rows = [(x, f"-{x}") for x in A] + [
        ("c", "-c + " + " + ".join(f"{a}*{b}" for a, b in zip(A, B)))] + [(x, f"-{x}") for x in B]
    lines.append(_hopf_lines("antipode", rows))
    lines.append("lattice free: " + " ".join(A + ["c"] + B))
    return _block(*lines)


def _f_hn_tilde(n: int) -> str:
    E, F = _idx("E", n), _idx("F", n)
    lines = [f"algebra Ftilde_Hn({n})", "kind QUEA", "generators " + ", ".join(E + ["H"] + F)]
    lines += _commuting(E) + _commuting(F) + _commuting(E, F)
    lines += [f"relation {x}*H - H*{x} - {x}" for x in E + F]
    rows = [(x, f"{x} @ 1 + 1 @ {x}") for x in E] + [
        ("H", "H @ 1 + 1 @ H + (q-1)*(" + " + ".join(f"{e} @ {f}" for e, f in zip(E, F)) + ")")] + [
        (x, f"{x} @ 1 + 1 @ {x}") for x in F]
    lines.append(_hopf_lines("coproduct", rows))
    lines.append(_hopf_lines("counit", [(g, "0") for g in E + ["H"] + F]))
    rows = [(x, f"-{x}") for x in E] + [
        ("H", "-H + (q-1)*(" + " + ".join(f"{e}*{f}" for e, f in zip(E, F)) + ")")] + [
        (x, f"-{x}") for x in F]
    lines.append(_hopf_lines("antipode", rows))
    lines.append("lattice free: " + " ".join(E + ["H"] + F))
    return _block(*lines)


def _f_shn_star(name: str, n: int) -> str:
    A, B = _idx("alpha", n), _idx("beta", n)
    gens = A + ["gamma", "gammainv"] + B
    lines = [f"algebra {name}({n})", "kind POISSON", "generators " + ", ".join(gens),
             "inverse gamma, gammainv"]
    rows = [(x, f"{x} @ gamma + gammainv @ {x}") for x in A + B] + [
        ("gamma", "gamma @ gamma"), ("gammainv", "gammainv @ gammainv")]
    lines.append(_hopf_lines("coproduct", rows))
    lines.append(_hopf_lines("counit", [(g, "1" if g.startswith("gamma") else "0") for g in gens]))
    rows = [(x, f"-{x}") for x in A + B] + [("gamma", "gammainv"), ("gammainv", "gamma")]
    lines.append(_hopf_lines("antipode", rows))
    lines.append("lattice free: " + " ".join(gens))
    lines += [f"bracket {a}, {b} = (gamma^2 - gammainv^2)/2" for a, b in zip(A, B)]
    return _block(*lines)


def _u_hn_star(n: int) -> str:
    E, F = _idx("e", n), _idx("f", n)
    gens = E + ["h"] + F
    lines = [f"algebra U_hnstar({n})", "kind COPOISSON", "generators " + ", ".join(gens)]
    lines += _commuting(E) + _commuting(F) + _commuting(E, F)
    lines += [f"relation {x}*h - h*{x} - {x}" for x in E + F]
    lines.append(_hopf_lines("coproduct", [(g, f"{g} @ 1 + 1 @ {g}") for g in gens]))
    lines.append(_hopf_lines("counit", [(g, "0") for g in gens]))
    lines.append(_hopf_lines("antipode", [(g, f"-{g}") for g in gens]))
    lines.append("lattice free: " + " ".join(gens))
    lines += [f"cobracket {x} = 0" for x in E + F]
    lines.append("cobracket h = " + " + ".join(f"{e} @ {f} - {f} @ {e}" for e, f in zip(E, F)))
    return _block(*lines)


# SL3: FRT relations, quantum determinant, quantum-minor antipode ------------------

_SL3_ORDER = ["r21", "r31", "r32", "r11", "r22", "r33", "r12", "r13", "r23"]


def _rho(i: int, j: int) -> str:
    return f"r{i}{j}"


def _inversions(s: tuple) -> int:
    return sum(1 for a in range(len(s)) for b in range(a + 1, len(s)) if s[a] > s[b])


def det_q_terms(rows=(1, 2, 3), cols=(1, 2, 3)) -> list:
    """(coefficient, word) pairs of the quantum determinant of a square block."""
    out = []
    for perm in permutations(range(len(cols))):
        word = [_rho(r, cols[k]) for r, k in zip(rows, perm)]
        out.append((_inversions(perm), word))
    return out


def _det_q_expr(rows, cols) -> str:
    parts = []
    for l, word in det_q_terms(rows, cols):
        c = f"(-q)^{l}" if l else "1"
        parts.append(f"{c}*" + "*".join(word))
    return " + ".join(parts)


def _frt_relations(n: int) -> list:
    rels = []
    idx = range(1, n + 1)
    for i in idx:
        for j in idx:
            for k in idx:
                if j < k:
                    rels.append(f"{_rho(i, j)}*{_rho(i, k)} - q*{_rho(i, k)}*{_rho(i, j)}")
                    rels.append(f"{_rho(j, i)}*{_rho(k, i)} - q*{_rho(k, i)}*{_rho(j, i)}")
    for i in idx:
        for j in idx:
            for k in idx:
                for l in idx:
                    if i < j and k < l:
                        rels.append(f"{_rho(i, l)}*{_rho(j, k)} - {_rho(j, k)}*{_rho(i, l)}")
                        rels.append(f"{_rho(i, k)}*{_rho(j, l)} - {_rho(j, l)}*{_rho(i, k)}"
                                    f" - (q-q^-1)*{_rho(i, l)}*{_rho(j, k)}")
    return rels


def _sl3_antipode(i: int, j: int) -> str:
    rows = tuple(r for r in (1, 2, 3) if r != j)
    cols = tuple(c for c in (1, 2, 3) if c != i)
    e = i - j
    return f"(-q)^{e}*(" + _det_q_expr(rows, cols) + ")" if e else _det_q_expr(rows, cols)


def _f_sl3() -> str:
    lines = ["algebra Fq_SL3_hat", "kind QFA", "generators " + ", ".join(_SL3_ORDER)]
    lines += [f"relation {r}" for r in _frt_relations(3)]
    lines.append(f"relation {_det_q_expr((1, 2, 3), (1, 2, 3))} - 1")
    lines.append("chain r11, r22, r33")
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            lines.append(f"coproduct {_rho(i, j)} = " +
                         " + ".join(f"{_rho(i, k)} @ {_rho(k, j)}" for k in (1, 2, 3)))
    for g in _SL3_ORDER:
        lines.append(f"counit {g} = {1 if g[1] == g[2] else 0}")
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            lines.append(f"antipode {_rho(i, j)} = {_sl3_antipode(i, j)}")
    lines.append("lattice free: " + " ".join(_SL3_ORDER))
    return _block(*lines)


def _shifted(expr: str, names: list, diag) -> str:
    """Substitute rho_ij = delta_ij + (q-1) t_ij into ``expr``."""
    def sub(m):
        g = m.group(0)
        return f"(1 + (q-1)*t{g[1:]})" if diag(g) else f"((q-1)*t{g[1:]})"
    return re.sub(r"\br\d\d\b", sub, expr)


def _f_sl3_tilde() -> str:
    """Derived by substitution: each relation is rewritten in t_ij = (rho_ij - delta_ij)/(q-1)
    and divided by the largest power of (q-1) it carries."""
    from .qcoeff import ONE, Q_MINUS_1, valuation
    from .cli.parse import parse_expression

    tnames = ["t" + g[1:] for g in _SL3_ORDER]
    free = Presentation("free_t", tnames)
    diag = lambda g: g[1] == g[2]

    def primitive(expr: str, want: int | None = None) -> NcElement:
        x = parse_expression(_shifted(expr, tnames, diag), free, raw=True)
        v = min(valuation(c) for c in x.terms.values()) if want is None else want
        return x.scale(ONE / Q_MINUS_1 ** v)

    lines = ["algebra Ftilde_SL3", "kind QUEA", "generators " + ", ".join(tnames)]
    for r in _frt_relations(3):
        lines.append(f"relation {primitive(r)}")
    lines.append(f"relation {primitive(_det_q_expr((1, 2, 3), (1, 2, 3)) + ' - 1')}")
    lines.append("chain t11, t22, t33")
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            t = f"t{i}{j}"
            extra = " + ".join(f"t{i}{k} @ t{k}{j}" for k in (1, 2, 3))
            lines.append(f"coproduct {t} = {t} @ 1 + 1 @ {t} + (q-1)*({extra})")
    for g in tnames:
        lines.append(f"counit {g} = 0")
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            s = _sl3_antipode(i, j) + (" - 1" if i == j else "")
            lines.append(f"antipode t{i}{j} = {primitive(s, 1)}")
    lines.append("lattice span: " + " ".join(tnames))
    lines.append("window t11, t22, t33")
    return _block(*lines)


# registry -------------------------------------------------------------------------

def _u_regen(pairs: dict) -> dict:
    return dict(pairs)


def _make_sl2() -> CatalogEntry:
    return CatalogEntry(
        "Uq_sl2_hat", parse_presentation_file(_U_SL2),
        tilde_recipe={"Fdot": "(q-1)*F", "Gdot": "(q-1)*Gamma", "K": "K", "Edot": "(q-1)*E"},
        target_name="F_aSL2star",
        map_images={"Fdot": "zinv*y", "Gdot": "(z^2 - zinv^2)/2", "K": "z^2", "Edot": "x*z"},
        paper_section="quantum sl2, adjoint form; tilde form and its limit F[SL2*]",
        tilde_text=_U_SL2_TILDE,
        regeneration={"F": "dd_Fdot", "H": "dd_K", "Gamma": "dd_Gdot", "E": "dd_Edot"},
        excluded=("E", "F"))


def _make_sl2_sc() -> CatalogEntry:
    return CatalogEntry(
        "Uq_sl2_hat_sc", parse_presentation_file(_U_SL2_SC),
        tilde_recipe={"Fdot": "(q-1)*F", "Gdot": "(q-1)*Gamma", "L": "L", "Edot": "(q-1)*E"},
        target_name="F_sSL2star",
        map_images={"Fdot": "zinv*y", "Gdot": "(z^2 - zinv^2)/2", "L": "z", "Edot": "x*z"},
        paper_section="quantum sl2, simply connected form (square root L of K)",
        tilde_text=_U_SL2_SC_TILDE,
        regeneration={"F": "dd_Fdot", "D": "dd_L", "Gamma": "dd_Gdot", "E": "dd_Edot"},
        excluded=("E", "F"),
        note="relations for L inferred from the e2 analogue")


def _make_f_sl2() -> CatalogEntry:
    return CatalogEntry(
        "Fq_SL2_hat", parse_presentation_file(_F_SL2),
        tilde_recipe={"F": "c/(q-1)", "Hp": "(a-1)/(q-1)", "Hm": "(d-1)/(q-1)", "E": "b/(q-1)"},
        target_name="U_sl2star",
        map_images={"F": "f", "Hp": "h", "Hm": "-h", "E": "e"},
        paper_section="quantum function algebra of SL2; tilde form and its limit U(sl2*)",
        tilde_text=_F_SL2_TILDE,
        regeneration={"b": "dd_E", "c": "dd_F", "a": "dd_Hp + 1", "d": "dd_Hm + 1"})


def _make_f_sl3() -> CatalogEntry:
    recipe, regen = {}, {}
    for g in _SL3_ORDER:
        t = "t" + g[1:]
        d = g[1] == g[2]
        recipe[t] = f"({g} - 1)/(q-1)" if d else f"{g}/(q-1)"
        regen[g] = f"dd_{t} + 1" if d else f"dd_{t}"
    return CatalogEntry(
        "Fq_SL3_hat", parse_presentation_file(_f_sl3()),
        tilde_recipe=recipe,
        paper_section="quantum function algebra of SL3 (FRT relations, det_q = 1)",
        tilde_text=_f_sl3_tilde(), regeneration=regen,
        note="tilde presentation derived by substitution")


def _make_e2_s() -> CatalogEntry:
    return CatalogEntry(
        "Uq_e2_s_hat", parse_presentation_file(_U_E2_S),
        tilde_recipe={"calF": "L*(q-1)*F", "calL": "L", "calLinv": "Linv", "calE": "(q-1)*E*Linv"},
        target_name="F_sE2star",
        map_images={"calF": "y", "calL": "z", "calLinv": "zinv", "calE": "x"},
        paper_section="quantum e2, simply connected form; tilde form and its limit F[sE2*]",
        tilde_text=_U_E2_S_TILDE,
        regeneration={"F": "(1 + (q-1)*dd_calLinv)*dd_calF", "Dp": "dd_calL",
                      "Dm": "dd_calLinv", "E": "dd_calE*(1 + (q-1)*dd_calL)"},
        excluded=("E", "F"))


def _make_e2_a() -> CatalogEntry:
    return CatalogEntry(
        "Uq_e2_a_hat", parse_presentation_file(_U_E2_A),
        tilde_recipe={"Fdot": "(q-1)*F", "K": "K", "Kinv": "Kinv", "Edot": "(q-1)*E"},
        target_name="F_aE2star",
        map_images={"Fdot": "zinv*y", "K": "z^2", "Kinv": "zinv^2", "Edot": "x*z"},
        paper_section="quantum e2, adjoint form; tilde form and its limit F[aE2*]",
        tilde_text=_U_E2_A_TILDE,
        regeneration={"F": "dd_Fdot", "Hp": "dd_K", "Hm": "dd_Kinv", "E": "dd_Edot"},
        excluded=("E", "F"))


def _make_f_e2() -> CatalogEntry:
    return CatalogEntry(
        "Fq_E2_hat", parse_presentation_file(_F_E2),
        tilde_recipe={"E": "b/(q-1)", "Dp": "(a-1)/(q-1)", "Dm": "(ainv-1)/(q-1)", "F": "c/(q-1)"},
        target_name="U_e2star",
        map_images={"E": "e", "Dp": "h/2", "Dm": "-h/2", "F": "f"},
        paper_section="quantum function algebra of E2; tilde form and its limit U(e2*)",
        tilde_text=_F_E2_TILDE,
        regeneration={"b": "dd_E", "a": "dd_Dp + 1", "ainv": "dd_Dm + 1", "c": "dd_F"})


def _make_f_ae2() -> CatalogEntry:
    return CatalogEntry(
        "Fq_aE2_hat", parse_presentation_file(_F_AE2),
        tilde_recipe={"E": "beta/(q-1)", "Hp": "(alpha-1)/(q-1)", "Hm": "(alphainv-1)/(q-1)",
                      "F": "gamma/(q-1)"},
        target_name="U_e2star",
        map_images={"E": "e", "Hp": "h", "Hm": "-h", "F": "f"},
        paper_section="quantum function algebra of aE2 (even part of E2); limit U(e2*)",
        tilde_text=_F_AE2_TILDE,
        regeneration={"beta": "dd_E", "alpha": "dd_Hp + 1", "alphainv": "dd_Hm + 1",
                      "gamma": "dd_F"})


def _make_hn_s(n: int) -> CatalogEntry:
    F, E = _idx("F", n), _idx("E", n)
    recipe = {f"Fdot{i}": f"(q-1)*F{i}" for i in range(1, n + 1)}
    recipe.update({"Gdot": "(q-1)*Gamma", "L": "L"})
    recipe.update({f"Edot{i}": f"(q-1)*E{i}" for i in range(1, n + 1)})
    images = {f"Fdot{i}": f"gammainv*beta{i}" for i in range(1, n + 1)}
    images.update({"Gdot": "(gamma^2 - gammainv^2)/2", "L": "gamma"})
    images.update({f"Edot{i}": f"alpha{i}*gamma" for i in range(1, n + 1)})
    regen = {f: f"dd_Fdot{f[1:]}" for f in F}
    regen.update({"D": "dd_L", "Gamma": "dd_Gdot"})
    regen.update({e: f"dd_Edot{e[1:]}" for e in E})
    return CatalogEntry(
        f"Uq_hn_s_hat({n})", parse_presentation_file(_u_hn_s(n)),
        tilde_recipe=recipe, target_name=f"F_sHnstar({n})", map_images=images,
        paper_section="quantum Heisenberg algebra, simply connected form",
        tilde_text=_u_hn_s_tilde(n), regeneration=regen, excluded=tuple(E + F))


def _make_hn_a(n: int) -> CatalogEntry:
    F, E = _idx("F", n), _idx("E", n)
    recipe = {f"Fdot{i}": f"(q-1)*F{i}" for i in range(1, n + 1)}
    recipe.update({"Gdot": "(q-1)*Gamma", "K": "K"})
    recipe.update({f"Edot{i}": f"(q-1)*E{i}" for i in range(1, n + 1)})
    images = {f"Fdot{i}": f"gammainv*beta{i}" for i in range(1, n + 1)}
    images.update({"Gdot": "(gamma^2 - gammainv^2)/2", "K": "gamma^2"})
    images.update({f"Edot{i}": f"alpha{i}*gamma" for i in range(1, n + 1)})
    regen = {f: f"dd_Fdot{f[1:]}" for f in F}
    regen.update({"H": "dd_K", "Gamma": "dd_Gdot"})
    regen.update({e: f"dd_Edot{e[1:]}" for e in E})
    return CatalogEntry(
        f"Uq_hn_a_hat({n})", parse_presentation_file(_u_hn_a(n)),
        tilde_recipe=recipe, target_name=f"F_aHnstar({n})", map_images=images,
        paper_section="quantum Heisenberg algebra, adjoint form",
        tilde_text=_u_hn_a_tilde(n), regeneration=regen, excluded=tuple(E + F))


def _make_f_hn(n: int) -> CatalogEntry:
    recipe = {f"E{i}": f"a{i}/(q-1)" for i in range(1, n + 1)}
    recipe["H"] = "c/(q-1)"
    recipe.update({f"F{i}": f"b{i}/(q-1)" for i in range(1, n + 1)})
    images = {f"E{i}": f"e{i}" for i in range(1, n + 1)}
    images["H"] = "h"
    images.update({f"F{i}": f"f{i}" for i in range(1, n + 1)})
    regen = {f"a{i}": f"dd_E{i}" for i in range(1, n + 1)}
    regen["c"] = "dd_H"
    regen.update({f"b{i}": f"dd_F{i}" for i in range(1, n + 1)})
    return CatalogEntry(
        f"Fq_Hn_hat({n})", parse_presentation_file(_f_hn(n)),
        tilde_recipe=recipe, target_name=f"U_hnstar({n})", map_images=images,
        paper_section="quantum function algebra of the Heisenberg group",
        tilde_text=_f_hn_tilde(n), regeneration=regen)


def _classical(name: str, text: str, section: str, even: bool = False) -> CatalogEntry:
    return CatalogEntry(name, parse_presentation_file(text), paper_section=section,
                        role="classical", even=even)


_FIXED = {
    "Uq_sl2_hat": _make_sl2,
    "Uq_sl2_hat_sc": _make_sl2_sc,
    "Fq_SL2_hat": _make_f_sl2,
    "Fq_SL3_hat": _make_f_sl3,
    "Uq_e2_s_hat": _make_e2_s,
    "Uq_e2_a_hat": _make_e2_a,
    "Fq_E2_hat": _make_f_e2,
    "Fq_aE2_hat": _make_f_ae2,
    "F_sSL2star": lambda: _classical(
        "F_sSL2star", _F_SSL2_STAR.format(name="F_sSL2star", xy="(z^2 - zinv^2)/2"),
        "Poisson dual group of SL2, simply connected"),
    "F_aSL2star": lambda: _classical(
        "F_aSL2star", _F_SSL2_STAR.format(name="F_aSL2star", xy="(z^2 - zinv^2)/2"),
        "Poisson dual group of SL2, adjoint (even subalgebra)", even=True),
    "U_sl2star": lambda: _classical("U_sl2star", _U_SL2_STAR, "enveloping algebra of sl2*"),
    "F_sE2star": lambda: _classical(
        "F_sE2star", _F_SSL2_STAR.format(name="F_sE2star", xy="0"),
        "Poisson dual group of E2, simply connected"),
    "F_aE2star": lambda: _classical(
        "F_aE2star", _F_SSL2_STAR.format(name="F_aE2star", xy="0"),
        "Poisson dual group of E2, adjoint (even subalgebra)", even=True),
    "U_e2star": lambda: _classical("U_e2star", _U_E2_STAR, "enveloping algebra of e2*"),
}

_FAMILIES = {
    "Uq_hn_s_hat": _make_hn_s,
    "Uq_hn_a_hat": _make_hn_a,
    "Fq_Hn_hat": _make_f_hn,
    "F_sHnstar": lambda n: _classical(f"F_sHnstar({n})", _f_shn_star("F_sHnstar", n),
                                      "Poisson dual group of the Heisenberg group, simply connected"),
    "F_aHnstar": lambda n: _classical(f"F_aHnstar({n})", _f_shn_star("F_aHnstar", n),
                                      "Poisson dual group of the Heisenberg group, adjoint",
                                      even=True),
    "U_hnstar": lambda n: _classical(f"U_hnstar({n})", _u_hn_star(n),
                                     "enveloping algebra of hn*"),
}

QUANTUM_NAMES = ["Uq_sl2_hat", "Uq_sl2_hat_sc", "Fq_SL2_hat", "Fq_SL3_hat", "Uq_e2_s_hat",
                 "Uq_e2_a_hat", "Fq_E2_hat", "Fq_aE2_hat", "Uq_hn_s_hat", "Uq_hn_a_hat",
                 "Fq_Hn_hat"]
CLASSICAL_NAMES = ["F_aSL2star", "F_sSL2star", "U_sl2star", "F_sE2star", "F_aE2star",
                   "U_e2star", "F_sHnstar", "F_aHnstar", "U_hnstar"]

_cache: dict = {}
_lock = threading.Lock()
_NAME = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\(\s*([^)]*)\s*\))?\s*$")


def parse_entry_name(name: str) -> tuple[str, int | None]:
    m = _NAME.match(name)
    if not m:
        raise UnknownEntry(f"unknown catalog entry {name!r}")
    base, arg = m.group(1), m.group(2)
    if base in _FAMILIES:
        if arg is None:
            return base, 1
        try:
            n = int(arg)
        except ValueError:
            raise BadParameter(f"{base}: n must be an integer, got {arg!r}")
        if n not in N_RANGE:
            raise BadParameter(f"{base}: n must lie in 1..4, got {n}")
        return base, n
    if base in _FIXED:
        if arg is not None:
            raise BadParameter(f"{base} takes no parameter")
        return base, None
    raise UnknownEntry(f"unknown catalog entry {name!r}")


def canonical_name(name: str) -> str:
    base, n = parse_entry_name(name)
    return base if n is None else f"{base}({n})"


def _verify(entry: CatalogEntry) -> None:
    rep = overlap_check(entry.presentation)
    if not rep.ok:
        raise VerificationFailed(f"{entry.name}: {rep.summary()}")


def catalog_get(name: str, check: bool = True) -> CatalogEntry:
    """Load (once) and return a catalog entry; ``Name(n)`` selects a family member."""
    key = canonical_name(name)
    with _lock:
        hit = _cache.get(key)
        if hit is not None:
            return hit
    base, n = parse_entry_name(key)
    entry = _FIXED[base]() if n is None else _FAMILIES[base](n)
    if check:
        _verify(entry)
    with _lock:
        _cache.setdefault(key, entry)
        return _cache[key]


def catalog_names(with_params: bool = False) -> list:
    out = []
    for base in QUANTUM_NAMES + CLASSICAL_NAMES:
        if base in _FAMILIES:
            out.extend(f"{base}({n})" for n in N_RANGE) if with_params else out.append(f"{base}(n)")
        else:
            out.append(base)
    return out


def quantum_entries(max_n: int = 3) -> list:
    """Names of the quantum entries, expanding the families up to ``max_n``."""
    out = []
    for base in QUANTUM_NAMES:
        if base in _FAMILIES:
            out.extend(f"{base}({n})" for n in range(1, max_n + 1))
        else:
            out.append(base)
    return out


__all__ = ["CatalogEntry", "catalog_get", "catalog_names", "quantum_entries", "canonical_name",
           "parse_entry_name", "det_q_terms", "QUANTUM_NAMES", "CLASSICAL_NAMES"]
