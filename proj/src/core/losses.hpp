// Copyright 2026 The sqldecomp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SQLDECOMP_CORE_LOSSES_HPP_
#define SQLDECOMP_CORE_LOSSES_HPP_

#include <vector>

#include "json.hpp"

namespace sqldecomp {

// Per-pair sequence log-probabilities (natural log) under the policy and
// the frozen reference model, plus the demanded reward margin.
struct PreferenceBatch {
  std::vector<double> policy_w;
  std::vector<double> policy_l;
  std::vector<double> ref_w;
  std::vector<double> ref_l;
  std::vector<double> margin;
  double beta = 0.2;

  std::size_t size() const { return policy_w.size(); }
  void Validate() const;

  static PreferenceBatch FromJson(const nlohmann::json& j);
};

struct PreferenceLoss {
  double loss = 0.0;
  std::vector<double> grad_policy_w;
  std::vector<double> grad_policy_l;
  std::vector<double> grad_ref_w;
  std::vector<double> grad_ref_l;

  nlohmann::json ToJson() const;
};

// mean_i softplus(-(beta*(pw-rw) - beta*(pl-rl) - margin)), with the
// analytic gradient for every log-probability input.
PreferenceLoss MdpoLoss(const PreferenceBatch& batch);

// MdpoLoss with every margin set to zero.
PreferenceLoss DpoLoss(const PreferenceBatch& batch);

struct SftBatch {
  std::vector<std::vector<double>> token_logprobs;

  void Validate() const;
  static SftBatch FromJson(const nlohmann::json& j);
};

// Negative log-likelihood summed over tokens, averaged over examples.
double SftLoss(const SftBatch& batch);

double ComputeMargin(double winner_reward, double loser_reward);

}  // namespace sqldecomp

#endif  // SQLDECOMP_CORE_LOSSES_HPP_
