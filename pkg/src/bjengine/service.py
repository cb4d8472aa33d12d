"""JSON-over-HTTP advisor service.

Stateless between requests apart from the engine's memo caches. Validation
failures return 400 with a structured body {code, field, message}; an
impossible no-natural conditioning returns 422.
"""

from __future__ import annotations

from typing import Literal, Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field, field_validator

from . import dealer as dealer_mod
from . import expectation, strategy
from .deck import Deck, infinite_deck, new_deck
from .errors import DegenerateConditionError, EngineError
from .hand import is_natural
from .rules import Rules

ADVISE_DEFAULT_DEPTH = 4


class DeckModel(BaseModel):
    mode: Literal["finite", "infinite"]
    counts: Optional[list[int]] = None

    @field_validator("counts")
    @classmethod
    def _counts_shape(cls, v):
        if v is not None:
            if len(v) != 10:
                raise ValueError("counts must have exactly 10 entries")
            if any(c < 0 for c in v):
                raise ValueError("counts must be non-negative")
        return v

    def build(self) -> Deck:
        if self.mode == "infinite":
            return infinite_deck()
        if self.counts is None:
            raise ValueError("finite decks need counts")
        return Deck(self.counts)


class RulesModel(BaseModel):
    n_decks: Optional[int] = 1
    dealer_hits_soft17: bool = False
    das: bool = True
    rsa: bool = True
    rsp: bool = True

    def build(self) -> Rules:
        return Rules(n_decks=self.n_decks,
                     dealer_hits_soft17=self.dealer_hits_soft17,
                     das=self.das, rsa=self.rsa, rsp=self.rsp)


class AdviseRequest(BaseModel):
    deck: DeckModel
    rules: RulesModel = RulesModel()
    upcard: int = Field(ge=1, le=10)
    player_cards: list[int] = Field(min_length=2)
    depth: int = Field(default=ADVISE_DEFAULT_DEPTH, ge=0,
                       le=strategy.DEFAULT_HIT_DEPTH)

    @field_validator("player_cards")
    @classmethod
    def _card_values(cls, v):
        if any(not 1 <= c <= 10 for c in v):
            raise ValueError("card values must be 1..10")
        return v


class DealerDistRequest(BaseModel):
    deck: DeckModel
    rules: RulesModel = RulesModel()
    upcard: int = Field(ge=1, le=10)


class ExpectedWinRequest(BaseModel):
    deck: Optional[DeckModel] = None
    rules: RulesModel = RulesModel()
    depth: int = Field(default=strategy.DEFAULT_HIT_DEPTH, ge=0,
                       le=strategy.DEFAULT_HIT_DEPTH)
    natural_depletion: bool = True

    def build_deck(self) -> Deck:
        if self.deck is not None:
            return self.deck.build()
        if self.rules.n_decks is None:
            return infinite_deck()
        return new_deck(self.rules.n_decks)


def create_app() -> FastAPI:
    app = FastAPI(title="bjengine", version="0.1.0")

    @app.exception_handler(RequestValidationError)
    async def _validation(request: Request, exc: RequestValidationError):
        err = exc.errors()[0]
        field = ".".join(str(p) for p in err.get("loc", ()) if p != "body")
        return JSONResponse(status_code=400, content={
            "code": "validation-error", "field": field or "body",
            "message": err.get("msg", "invalid request")})

    @app.exception_handler(DegenerateConditionError)
    async def _degenerate(request: Request, exc: DegenerateConditionError):
        return JSONResponse(status_code=422, content={
            "code": exc.code, "field": None, "message": str(exc)})

    @app.exception_handler(EngineError)
    async def _engine(request: Request, exc: EngineError):
        return JSONResponse(status_code=400, content={
            "code": exc.code, "field": None, "message": str(exc)})

    @app.exception_handler(ValueError)
    async def _value(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={
            "code": "invalid-argument", "field": None, "message": str(exc)})

    @app.get("/health")
    async def health():
        return {"status": "ok"}

    @app.post("/advise")
    def advise(req: AdviseRequest):
        deck = req.deck.build()
        rules = req.rules.build()
        cards = req.player_cards
        response = {"is_player_natural": False, "evaluation": None,
                    "dealer_dist_q": None, "ew_estimate": None}
        if len(cards) == 2 and is_natural(*cards):
            response["is_player_natural"] = True
            response["payout"] = rules.natural_payout
            return response
        dist = dealer_mod.dealer_dist_no_natural(req.upcard, deck, rules)
        ev = strategy.evaluate_hand(cards, req.upcard, deck, rules, req.depth)
        response["evaluation"] = ev.to_json()
        response["dealer_dist_q"] = dist.to_json()
        return response

    @app.post("/dealer-dist")
    def dealer_dist(req: DealerDistRequest):
        deck = req.deck.build()
        rules = req.rules.build()
        p = dealer_mod.dealer_dist(req.upcard, deck, rules)
        q = dealer_mod.dealer_dist_no_natural(req.upcard, deck, rules)
        return {"p": p.to_json(), "q": q.to_json()}

    @app.post("/expected-win")
    def expected_win(req: ExpectedWinRequest):
        deck = req.build_deck()
        rules = req.rules.build()
        game = expectation.expected_win(deck, rules, req.depth,
                                        req.natural_depletion)
        return game.to_json()

    @app.post("/removal-effects")
    def removal_effects(req: ExpectedWinRequest):
        deck = req.build_deck()
        rules = req.rules.build()
        eff = expectation.removal_effects(deck, rules, req.depth,
                                          req.natural_depletion)
        return eff.to_json()

    return app
