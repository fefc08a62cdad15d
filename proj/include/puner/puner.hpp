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

#include "puner/bootstrap.hpp"
#include "puner/common.hpp"
#include "puner/config.hpp"
#include "puner/conllu.hpp"
#include "puner/corpus.hpp"
#include "puner/evaluation.hpp"
#include "puner/expansion.hpp"
#include "puner/features.hpp"
#include "puner/gazetteer.hpp"
#include "puner/model.hpp"
#include "puner/parallel.hpp"
#include "puner/risk.hpp"
#include "puner/rng.hpp"
#include "puner/synthgen.hpp"
#include "puner/tagio.hpp"
#include "puner/trainer.hpp"
