"""HuggingFace transformers backend.

Imports torch and transformers lazily so the rest of the package works
without them installed.
"""

from __future__ import annotations

import numpy as np

from .backend import Backend, Encoding
from .config import AdapterConfig


class HuggingFaceBackend(Backend):
    def __init__(self, config: AdapterConfig, kind: str | None = None):
        import torch
        from transformers import (AutoConfig, AutoModelForCausalLM,
                                  AutoModelForMaskedLM, AutoTokenizer)

        self._torch = torch
        self.kind = kind or ("causal" if config.regime == "alm" else "masked")
        if self.kind not in ("causal", "masked"):
            raise ValueError(f"unknown backend kind {self.kind!r}")
        self.tokenizer = AutoTokenizer.from_pretrained(config.model)
        if not self.tokenizer.is_fast:
            raise ValueError("a fast tokenizer with offset mapping is required")
        auto = AutoModelForCausalLM if self.kind == "causal" else AutoModelForMaskedLM
        if config.randomize_weights:
            torch.manual_seed(0)
            self.model = auto.from_config(AutoConfig.from_pretrained(config.model))
        else:
            self.model = auto.from_pretrained(config.model)
        self.model.to(config.device)
        self.model.eval()
        self.device = config.device

    @property
    def max_length(self) -> int:
        return int(min(self.tokenizer.model_max_length, 1 << 20))

    @property
    def hidden_size(self) -> int:
        return int(self.model.config.hidden_size)

    def encode(self, text: str) -> Encoding:
        enc = self.tokenizer(text, return_offsets_mapping=True,
                             return_special_tokens_mask=True,
                             add_special_tokens=True)
        tokens = self.tokenizer.convert_ids_to_tokens(enc["input_ids"])
        return Encoding(tokens=tokens,
                        offsets=[tuple(o) for o in enc["offset_mapping"]],
                        special=[bool(s) for s in enc["special_tokens_mask"]])

    def _ids(self, enc: Encoding) -> list[int]:
        return self.tokenizer.convert_tokens_to_ids(enc.tokens)

    def causal_logprobs(self, enc: Encoding) -> list[float]:
        torch = self._torch
        ids = self._ids(enc)
        prepended = False
        if not enc.special[0]:
            # give the first token an explicit begin-of-sequence context
            bos = self.tokenizer.bos_token_id
            if bos is None:
                raise ValueError("tokenizer provides no begin-of-sequence token")
            ids = [bos] + ids
            prepended = True
        with torch.no_grad():
            logits = self.model(torch.tensor([ids], device=self.device)).logits[0]
        logprobs = torch.log_softmax(logits, dim=-1)
        out = [0.0] * len(enc)
        for pos in range(len(enc)):
            shifted = pos + 1 if prepended else pos
            if shifted == 0:
                continue  # a leading special token is never scored
            out[pos] = float(logprobs[shifted - 1, ids[shifted]])
        return out

    def masked_logprob(self, enc: Encoding, masked: frozenset[int],
                       target: int) -> float:
        torch = self._torch
        ids = self._ids(enc)
        target_id = ids[target]
        mask_id = self.tokenizer.mask_token_id
        if mask_id is None:
            raise ValueError("tokenizer provides no mask token")
        for pos in masked:
            ids[pos] = mask_id
        with torch.no_grad():
            logits = self.model(torch.tensor([ids], device=self.device)).logits[0]
        return float(torch.log_softmax(logits[target], dim=-1)[target_id])

    def hidden_states(self, enc: Encoding, layer: int) -> np.ndarray:
        torch = self._torch
        ids = torch.tensor([self._ids(enc)], device=self.device)
        with torch.no_grad():
            out = self.model(ids, output_hidden_states=True)
        states = out.hidden_states
        if not 0 <= layer < len(states):
            raise ValueError(f"layer {layer} out of range for a model with "
                             f"{len(states)} hidden-state layers")
        return states[layer][0].cpu().numpy()
