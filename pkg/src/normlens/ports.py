"""HTTP backends and deterministic in-process stubs for the external ports.

Remote backends:
  - sidecar classifiers: POST {base}/classify with {"task": ..., "sentences": [...]}
  - judge / generation: chat-completion-style endpoints, URL and key taken
    from NORMLENS_JUDGE_URL / NORMLENS_JUDGE_KEY and NORMLENS_GEN_URL /
    NORMLENS_GEN_KEY.

Stubs are deterministic so pipeline outputs are byte-identical across runs.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from typing import Sequence

import requests

from .errors import (
    BackendUnavailableError,
    ClassifierUnavailableError,
    JudgeUnavailableError,
    ScorerUnavailableError,
)
from .metrics.rhetoric import NARRATIVE_CATEGORIES, build_judge_payload, parse_judge_answer

SIDECAR_BATCH_LIMIT = 256


@dataclass
class SidecarClient:
    """Client for the classifier sidecar's /classify endpoint."""

    base_url: str
    timeout: float = 30.0
    retries: int = 1

    def _post(self, task: str, sentences: Sequence[str]) -> dict:
        url = self.base_url.rstrip("/") + "/classify"
        last_error: Exception | None = None
        for _ in range(self.retries + 1):
            try:
                resp = requests.post(
                    url, json={"task": task, "sentences": list(sentences)}, timeout=self.timeout
                )
                resp.raise_for_status()
                return resp.json()
            except requests.RequestException as e:  # retry once per batch
                last_error = e
        raise BackendUnavailableError(f"sidecar unreachable at {url}: {last_error}")

    def _batched(self, task: str, sentences: Sequence[str], key: str) -> list:
        out: list = []
        for i in range(0, len(sentences), SIDECAR_BATCH_LIMIT):
            chunk = sentences[i : i + SIDECAR_BATCH_LIMIT]
            body = self._post(task, chunk)
            values = body.get(key)
            if not isinstance(values, list) or len(values) != len(chunk):
                raise BackendUnavailableError(f"sidecar returned malformed {key!r} for task {task!r}")
            out.extend(values)
        return out


@dataclass
class SidecarFormalityScorer:
    client: SidecarClient

    def score_sentences(self, sentences: Sequence[str]) -> list[float]:
        try:
            return [float(s) for s in self.client._batched("formality", sentences, "scores")]
        except BackendUnavailableError as e:
            raise ScorerUnavailableError(str(e)) from e


@dataclass
class SidecarNarrativeClassifier:
    client: SidecarClient

    def classify(self, sentences: Sequence[str]) -> list[str]:
        try:
            return [str(x) for x in self.client._batched("narrative", sentences, "labels")]
        except BackendUnavailableError as e:
            raise ClassifierUnavailableError(str(e)) from e


@dataclass
class ChatCompletionJudge:
    """Quantitative-evidence judge against a chat-completion endpoint.

    Decoding contract: temperature 0, max 5 output tokens, yes/no prefix
    match with "no" as the fallback."""

    url: str
    api_key: str = ""
    model: str = ""
    timeout: float = 60.0

    def judge(self, sentence: str) -> bool:
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        body = {
            "messages": [{"role": "user", "content": build_judge_payload(sentence)}],
            "temperature": 0.0,
            "max_tokens": 5,
        }
        if self.model:
            body["model"] = self.model
        try:
            resp = requests.post(self.url, json=body, headers=headers, timeout=self.timeout)
            resp.raise_for_status()
            content = resp.json()["choices"][0]["message"]["content"]
        except (requests.RequestException, KeyError, IndexError, ValueError) as e:
            raise JudgeUnavailableError(f"judge endpoint failed: {e}") from e
        return parse_judge_answer(content)


@dataclass
class ChatCompletionGenerator:
    """Adaptation generator against a chat-completion endpoint."""

    url: str
    api_key: str = ""
    timeout: float = 120.0

    def generate(self, prompt: str, model: str, temperature: float, top_p: float,
                 max_tokens: int) -> tuple[str, bool]:
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        body = {
            "model": model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": temperature,
            "top_p": top_p,
            "max_tokens": max_tokens,
        }
        try:
            resp = requests.post(self.url, json=body, headers=headers, timeout=self.timeout)
            resp.raise_for_status()
            choice = resp.json()["choices"][0]
        except (requests.RequestException, KeyError, IndexError, ValueError) as e:
            raise BackendUnavailableError(f"generation endpoint failed: {e}") from e
        truncated = choice.get("finish_reason") == "length"
        return choice["message"]["content"], truncated


# --- deterministic stubs ---------------------------------------------------


@dataclass(frozen=True)
class ConstantScorer:
    score: float = 0.5

    def score_sentences(self, sentences: Sequence[str]) -> list[float]:
        return [self.score] * len(sentences)


class HashFormalityStub:
    """Deterministic pseudo-formality: longer, punctuated sentences score higher."""

    def score_sentences(self, sentences: Sequence[str]) -> list[float]:
        out = []
        for s in sentences:
            h = int.from_bytes(hashlib.sha256(s.encode()).digest()[:4], "big")
            base = 0.4 + 0.2 * (h / 0xFFFFFFFF)
            bonus = 0.2 if s.rstrip().endswith((".", "?")) else 0.0
            bonus += min(len(s.split()), 20) / 100.0
            out.append(min(base + bonus, 1.0))
        return out


class PositionalNarrativeStub:
    """Labels sentences by relative position: background early, results late."""

    def classify(self, sentences: Sequence[str]) -> list[str]:
        n = len(sentences)
        labels = []
        for i in range(n):
            frac = i / (n - 1) if n > 1 else 0.5
            if frac < 0.4:
                labels.append("background")
            elif frac < 0.6:
                labels.append("objective")
            elif frac < 0.85:
                labels.append("method")
            else:
                labels.append("result")
        return labels


class ScriptedNarrativeStub:
    """Returns a fixed label script, cycling if the document is longer."""

    def __init__(self, script: Sequence[str]):
        if not script or set(script) - set(NARRATIVE_CATEGORIES):
            raise ValueError("script must be non-empty narrative categories")
        self.script = list(script)

    def classify(self, sentences: Sequence[str]) -> list[str]:
        return [self.script[i % len(self.script)] for i in range(len(sentences))]


_NUMBER_WORDS = (
    "one|two|three|four|five|six|seven|eight|nine|ten|eleven|twelve|twenty|thirty|"
    "forty|fifty|sixty|seventy|eighty|ninety|hundred|thousand|million|billion|"
    "millions|billions|thousands|hundreds|half|third|quarter"
)


class RuleBasedJudgeStub:
    """Offline judge approximating the prompt's decision rules.

    Answers yes when a sentence contains numeric content that is not a
    citation, a structural reference, a historical date, a math expression,
    or a bullet marker. Deterministic, for tests and no-network runs.
    """

    _number = re.compile(r"\d|\b(?:" + _NUMBER_WORDS + r")\b", re.IGNORECASE)
    _citation = re.compile(r"\[\d+(?:,\s*\d+)*\]|\([^)]*\bet\.?\s*al\.?[^)]*\d{4}[^)]*\)|\(\w+,?\s+\d{4}\)")
    _structure = re.compile(
        r"\b(?:figure|fig\.?|figs\.?|table|tab\.?|tabs\.?|section|sec\.?|appendix|"
        r"theorem|lemma|algorithm|equation|eq\.?|chapter)\s*~?\s*\d",
        re.IGNORECASE,
    )
    _historical = re.compile(r"\b(?:in|since|from|until|by)\s+(?:1[6-9]\d\d|20[0-2]\d)\b", re.IGNORECASE)
    _math = re.compile(r"[=<>≤≥]")
    _bullet = re.compile(r"^\s*(?:\d+[.)]|\(\d+\))\s")
    _nonquant = re.compile(
        r"\b(?:one of the|first experiment|two main contributions|first to)\b", re.IGNORECASE
    )

    def judge(self, sentence: str) -> bool:
        text = sentence.strip()
        if not text or not self._number.search(text):
            return False
        stripped = self._citation.sub(" ", text)
        stripped = self._structure.sub(" ", stripped)
        stripped = self._historical.sub(" ", stripped)
        if self._bullet.match(stripped):
            stripped = self._bullet.sub(" ", stripped)
        if self._math.search(stripped):
            return False
        if self._nonquant.search(stripped):
            return False
        return bool(self._number.search(stripped))


@dataclass(frozen=True)
class EchoGenerator:
    """Identity backend: the adaptation is the source text."""

    def generate(self, prompt: str, model: str, temperature: float, top_p: float,
                 max_tokens: int) -> tuple[str, bool]:
        marker = "\n---\n"
        text = prompt.rsplit(marker, 1)[-1] if marker in prompt else prompt
        return text, False
