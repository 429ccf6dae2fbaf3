"""Violation records shared by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Violation:
    """A named law together with the site where it fails."""

    law: str
    where: tuple = ()
    detail: str = ""

    def __str__(self) -> str:
        loc = f" at {self.where}" if self.where else ""
        extra = f": {self.detail}" if self.detail else ""
        return f"{self.law} fails{loc}{extra}"
