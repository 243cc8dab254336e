# Copyright 2026 The HeadTags Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Writes random corpora with reference corpus BLEU scores from sacrebleu.

Usage: python3 bleu_oracle.py <out_file>
"""
import json
import random
import sys

import sacrebleu
from sacrebleu.metrics import BLEU


def random_tokens(rng, vocab, lo, hi):
    return [rng.choice(vocab) for _ in range(rng.randint(lo, hi))]


def main():
    rng = random.Random(20260419)
    bleu = BLEU(tokenize="none", smooth_method="floor", smooth_value=1e-9,
                force=True)
    with open(sys.argv[1], "w", encoding="utf-8") as f:
        f.write(f"# Corpus BLEU from sacrebleu {sacrebleu.__version__}, "
                "tokenize=none, smooth_method=floor, smooth_value=1e-9\n")
        for case in range(60):
            vocab = [f"t{i}" for i in range(rng.randint(2, 12))]
            hyps, refs = [], []
            for _ in range(rng.randint(1, 12)):
                ref = random_tokens(rng, vocab, 1, 15)
                roll = rng.random()
                if roll < 0.2:
                    hyp = list(ref)
                elif roll < 0.4:
                    hyp = ref[: rng.randint(0, len(ref))] + random_tokens(rng, vocab, 0, 4)
                elif roll < 0.45:
                    hyp = []
                else:
                    hyp = random_tokens(rng, vocab, 0, 18)
                hyps.append(hyp)
                refs.append(ref)
            score = bleu.corpus_score([" ".join(h) for h in hyps],
                                      [[" ".join(r) for r in refs]]).score / 100.0
            f.write(json.dumps({"hyps": hyps, "refs": refs, "bleu": score}) + "\n")


if __name__ == "__main__":
    main()
