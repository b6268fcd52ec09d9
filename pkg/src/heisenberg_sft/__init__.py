"""Strongly aperiodic SFT on the discrete Heisenberg group: windows, rules, analyzers."""
from .analyze import (PeriodCandidate, check_alignment, check_coordination, check_row_uniformity,
                      check_sync, factor_phi, factor_sofic, scan_periods, strip_widths)
from .counter import OMEGA, TILDE, CounterSym, addition_allowed, symbol_allowed
from .generate import GenParams, gen_exceptional, gen_omega, gen_omega_tilde, generate
from .group import Site, inv, mul, neighbor
from .robinson import RobTile, build_tileset, in_B, in_C, matches, rho, supertile
from .sft import Box, Violation, Window, check_window, rule_support

__all__ = [n for n in dir() if not n.startswith("_")]
