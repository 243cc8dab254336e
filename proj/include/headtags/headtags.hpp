// Copyright 2026 The HeadTags Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include "headtags/baselines.hpp"
#include "headtags/corpus.hpp"
#include "headtags/corpus_stats.hpp"
#include "headtags/error.hpp"
#include "headtags/gen_metrics.hpp"
#include "headtags/instruction.hpp"
#include "headtags/io.hpp"
#include "headtags/languages.hpp"
#include "headtags/prf.hpp"
#include "headtags/retrieval.hpp"
#include "headtags/segmenter.hpp"
#include "headtags/shuffle.hpp"
#include "headtags/stemmer.hpp"
#include "headtags/tag_metrics.hpp"
#include "headtags/unicode.hpp"
