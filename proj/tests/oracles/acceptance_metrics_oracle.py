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


"""Writes 500 random token-list pairs with sacrebleu corpus BLEU for the
whole set and for each block of 10 consecutive pairs.

Usage: python3 acceptance_metrics_oracle.py <out_file>
"""
import json
import random
import sys

import sacrebleu
from sacrebleu.metrics import BLEU


def main():
    rng = random.Random(5000)
    bleu = BLEU(tokenize="none", smooth_method="floor", smooth_value=1e-9, force=True)
    pairs = []
    for _ in range(500):
        vocab = [f"w{i}" for i in range(rng.randint(3, 15))]
        ref = [rng.choice(vocab) for _ in range(rng.randint(1, 25))]
        if rng.random() < 0.3:
            hyp = list(ref)
            for _ in range(rng.randint(0, 4)):
                hyp[rng.randrange(len(hyp))] = rng.choice(vocab)
            hyp = hyp[:rng.randint(max(1, len(hyp) // 2), len(hyp))]
        else:
            hyp = [rng.choice(vocab) for _ in range(rng.randint(0, 25))]
        pairs.append((hyp, ref))

    def score(block):
        hyps = [" ".join(h) for h, _ in block]
        refs = [" ".join(r) for _, r in block]
        return bleu.corpus_score(hyps, [refs]).score / 100.0

    with open(sys.argv[1], "w", encoding="utf-8") as f:
        f.write(f"# sacrebleu {sacrebleu.__version__}, tokenize=none, smooth_method=floor, "
                "smooth_value=1e-9; 500 pairs, then corpus BLEU of all pairs and of each block of 10\n")
        for hyp, ref in pairs:
            f.write(json.dumps({"hyp": hyp, "ref": ref}) + "\n")
        f.write(json.dumps({"block": "all", "bleu": score(pairs)}) + "\n")
        for b in range(50):
            f.write(json.dumps({"block": b, "bleu": score(pairs[b * 10:(b + 1) * 10])}) + "\n")


if __name__ == "__main__":
    main()
