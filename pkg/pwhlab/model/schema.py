from typing import Annotated, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

Matrix = List[List[float]]

# --- PARAMETER SETS ---

class SinglePortParams(BaseModel):
    """
    RLC network feeding a ZIP load on its capacitor (SI units).
    The constant-current term `i_load` is zero for a pure R + CPL load.
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    v_g: float = Field(gt=0, description="Source voltage [V]")
    r_l: float = Field(gt=0, description="Series line resistance [ohm]")
    r_p: float = Field(gt=0, description="Parallel load resistance [ohm]")
    L: float = Field(gt=0, description="Inductance [H]")
    C: float = Field(gt=0, description="Capacitance [F]")
    P: float = Field(ge=0, description="Constant power load [W]")
    i_load: float = Field(default=0.0, ge=0, description="Constant current load [A]")

    @property
    def v_eff(self) -> float:
        """Source voltage seen by the capacitor node once the current sink is folded in."""
        return self.v_g - self.r_l * self.i_load


class SgParams(BaseModel):
    """Improved swing equation of a synchronous generator (per-unit)."""
    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)

    M_inertia: float = Field(gt=0, alias="M")
    D_m: float = Field(gt=0)
    D_d: float = Field(gt=0)
    tau_m: float = Field(gt=0)
    omega_star: float = Field(gt=0)
    P_e: float = Field(ge=0)

    @property
    def damping(self) -> float:
        return self.D_d + self.D_m

    @property
    def drive(self) -> float:
        """Constant torque term tau_m + D_d * omega_star."""
        return self.tau_m + self.D_d * self.omega_star


class MultiportParams(BaseModel):
    """DC network with l inductors and c capacitors; loads sit on the capacitors."""
    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)

    L_mat: Matrix = Field(alias="L")
    C_mat: Matrix = Field(alias="C")
    Z_mat: Matrix = Field(alias="Z")
    Y_mat: Matrix = Field(alias="Y")
    Gamma: Matrix
    P_vec: List[float] = Field(alias="P")
    u_c: Optional[List[float]] = None

    @property
    def n_inductors(self) -> int:
        return len(self.L_mat)

    @property
    def n_capacitors(self) -> int:
        return len(self.C_mat)

    @model_validator(mode="after")
    def check_shapes(self) -> "MultiportParams":
        l, c = self.n_inductors, self.n_capacitors
        if l == 0 or c == 0:
            raise ValueError("network needs at least one inductor and one capacitor")
        for name, mat, size in (("L", self.L_mat, l), ("C", self.C_mat, c),
                                ("Z", self.Z_mat, l), ("Y", self.Y_mat, c)):
            if len(mat) != size or any(len(row) != size for row in mat):
                raise ValueError(f"{name} must be {size}x{size}")
        if len(self.Gamma) != l or any(len(row) != c for row in self.Gamma):
            raise ValueError(f"Gamma must be {l}x{c}")
        if len(self.P_vec) != c:
            raise ValueError(f"P must have {c} entries")
        if self.u_c is not None and len(self.u_c) != l + c:
            raise ValueError(f"u_c must have {l + c} entries")
        return self


# --- MODEL FILE DOCUMENTS ---

class SinglePortDocument(SinglePortParams):
    kind: Literal["single_port"]
    units: Optional[str] = None


class SgDocument(SgParams):
    kind: Literal["sg"]
    units: Optional[str] = None


class MultiportDocument(MultiportParams):
    kind: Literal["multiport"]
    units: Optional[str] = None


class RawDocument(BaseModel):
    """Direct matrix description; indices in `power_channels` are 0-based."""
    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: Literal["raw"]
    J: Matrix
    R: Matrix
    M: Matrix
    power_channels: List[int] = []
    u_bar: List[float]
    u_c: List[float]
    label: Optional[str] = None
    units: Optional[str] = None


ModelDocument = Annotated[
    Union[SinglePortDocument, SgDocument, MultiportDocument, RawDocument],
    Field(discriminator="kind"),
]
