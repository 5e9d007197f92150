"""Scan of cyclic Hadamard parameters (4m-1, 2m-1, m-1).

Every v = 3 (mod 4) up to a bound is either covered by a known family
(prime v, a product of twin primes, or 2^m - 1), excluded by the battery,
or left as a survivor together with its full certificate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import isqrt

from .battery import BatteryConfig, run_battery
from .numtheory import is_prime
from .params import hadamard_params
from .results import Certificate


class Family(str, enum.Enum):
    PRIME = "PRIME"
    TWIN_PRIME = "TWIN_PRIME"
    MERSENNE = "MERSENNE"


class ScanStatus(str, enum.Enum):
    KNOWN_FAMILY = "KNOWN_FAMILY"
    EXCLUDED = "EXCLUDED"
    SURVIVOR = "SURVIVOR"


# Table 4 of the literature lists these as open; no implemented test may
# exclude one of them.
TABLE4_OPEN = (3439, 4355, 8591, 8835, 9135, 9215, 9423)
# Rows excluded in the literature by theorems this package does not implement.
TABLE4_LANDER = (4623, 5775, 7395, 7743, 8227, 8463)


class SoundnessError(RuntimeError):
    """A test excluded parameters that are known to be open or to exist."""


@dataclass(frozen=True)
class FamilyMembership:
    v: int
    tags: frozenset[Family]

    @property
    def known(self) -> bool:
        return bool(self.tags)


def classify_family(v: int) -> FamilyMembership:
    if v % 4 != 3:
        raise ValueError(f"v = {v} is not 3 mod 4")
    tags = set()
    if is_prime(v):
        tags.add(Family.PRIME)
    # v = p(p+2) means v + 1 = (p+1)^2
    r = isqrt(v + 1)
    if r * r == v + 1 and is_prime(r - 1) and is_prime(r + 1):
        tags.add(Family.TWIN_PRIME)
    if (v + 1) & v == 0:
        tags.add(Family.MERSENNE)
    return FamilyMembership(v, frozenset(tags))


@dataclass
class ScanRow:
    v: int
    status: ScanStatus
    family: FamilyMembership
    certificate: Certificate | None = None

    @property
    def excluding_test(self) -> str | None:
        if self.certificate is None or self.certificate.excluded_by is None:
            return None
        return self.certificate.excluded_by.test_name


@dataclass(frozen=True)
class HadamardConfig:
    battery: BatteryConfig = field(default_factory=BatteryConfig)
    strict: bool = True  # raise SoundnessError on a Table 4 open value


def scan_one(v: int, config: HadamardConfig) -> ScanRow:
    fam = classify_family(v)
    if fam.known:
        return ScanRow(v, ScanStatus.KNOWN_FAMILY, fam)
    cert = run_battery(hadamard_params(v), config.battery)
    if cert.excluded_by is not None:
        if config.strict and v in TABLE4_OPEN:
            raise SoundnessError(f"open Hadamard value {v} excluded by {cert.excluded_by.test_name}")
        return ScanRow(v, ScanStatus.EXCLUDED, fam, cert)
    return ScanRow(v, ScanStatus.SURVIVOR, fam, cert)


def hadamard_scan(v_max: int, config: HadamardConfig | None = None) -> list[ScanRow]:
    config = config or HadamardConfig()
    return [scan_one(v, config) for v in range(7, v_max + 1, 4)]
