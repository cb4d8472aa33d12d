"""Table rules the engine models.

Only the options that change the expectation formulas are represented:
dealer behavior on soft 17, double down after split (das), re-splitting
aces (rsa), re-splitting non-ace pairs (rsp), and the shoe size. The
natural payout is fixed at 3:2.
"""

from __future__ import annotations

from dataclasses import dataclass

NATURAL_PAYOUT = 1.5


@dataclass(frozen=True)
class Rules:
    n_decks: int | None = 1  # None means an infinite shoe
    dealer_hits_soft17: bool = False
    das: bool = True
    rsa: bool = True
    rsp: bool = True

    @property
    def natural_payout(self) -> float:
        return NATURAL_PAYOUT

    @property
    def option_bits(self) -> str:
        """The das/rsa/rsp options as a 3-character bit string."""
        return f"{int(self.das)}{int(self.rsa)}{int(self.rsp)}"

    def to_json(self) -> dict:
        return {
            "n_decks": self.n_decks,
            "dealer_hits_soft17": self.dealer_hits_soft17,
            "das": self.das,
            "rsa": self.rsa,
            "rsp": self.rsp,
            "natural_payout": NATURAL_PAYOUT,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Rules":
        return cls(
            n_decks=obj.get("n_decks", 1),
            dealer_hits_soft17=bool(obj.get("dealer_hits_soft17", False)),
            das=bool(obj.get("das", True)),
            rsa=bool(obj.get("rsa", True)),
            rsp=bool(obj.get("rsp", True)),
        )


def parse_option_bits(bits: str, *, n_decks: int | None = 1,
                      dealer_hits_soft17: bool = False) -> Rules:
    """Parse a das/rsa/rsp bit string such as ``"010"`` into Rules."""
    if len(bits) != 3 or any(c not in "01" for c in bits):
        raise ValueError(f"rules bits must be three 0/1 characters, got {bits!r}")
    return Rules(
        n_decks=n_decks,
        dealer_hits_soft17=dealer_hits_soft17,
        das=bits[0] == "1",
        rsa=bits[1] == "1",
        rsp=bits[2] == "1",
    )
