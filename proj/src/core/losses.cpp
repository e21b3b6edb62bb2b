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

#include "core/losses.hpp"

#include <cmath>

#include "core/error.hpp"

namespace sqldecomp {
namespace {

double Softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::fabs(x))); }

// 1 / (1 + exp(x)) without overflow.
double SigmoidOfNegative(double x) {
  if (x >= 0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

void CheckFinite(const std::vector<double>& v, const char* name) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::kInvalidArgument, std::string(name) + " contains a non-finite value");
    }
  }
}

std::vector<double> Column(const nlohmann::json& pairs, const char* key, bool optional) {
  std::vector<double> out;
  for (const auto& p : pairs) {
    if (optional && !p.contains(key)) {
      out.push_back(0.0);
    } else {
      out.push_back(p.at(key).get<double>());
    }
  }
  return out;
}

}  // namespace

void PreferenceBatch::Validate() const {
  const std::size_t n = policy_w.size();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "preference batch is empty");
  if (policy_l.size() != n || ref_w.size() != n || ref_l.size() != n || margin.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "preference batch arrays differ in length");
  }
  CheckFinite(policy_w, "policy_w");
  CheckFinite(policy_l, "policy_l");
  CheckFinite(ref_w, "ref_w");
  CheckFinite(ref_l, "ref_l");
  CheckFinite(margin, "margin");
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorCode::kInvalidArgument, "beta must be a positive finite number");
  }
}

PreferenceBatch PreferenceBatch::FromJson(const nlohmann::json& j) {
  try {
    PreferenceBatch b;
    b.beta = j.value("beta", 0.2);
    const auto& pairs = j.at("pairs");
    b.policy_w = Column(pairs, "policy_w", false);
    b.policy_l = Column(pairs, "policy_l", false);
    b.ref_w = Column(pairs, "ref_w", false);
    b.ref_l = Column(pairs, "ref_l", false);
    b.margin = Column(pairs, "margin", true);
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad preference batch: ") + e.what());
  }
}

nlohmann::json PreferenceLoss::ToJson() const {
  return {{"loss", loss},
          {"grad",
           {{"policy_w", grad_policy_w},
            {"policy_l", grad_policy_l},
            {"ref_w", grad_ref_w},
            {"ref_l", grad_ref_l}}}};
}

PreferenceLoss MdpoLoss(const PreferenceBatch& batch) {
  batch.Validate();
  const std::size_t n = batch.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  const double beta = batch.beta;
  PreferenceLoss out;
  out.grad_policy_w.resize(n);
  out.grad_policy_l.resize(n);
  out.grad_ref_w.resize(n);
  out.grad_ref_l.resize(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double rw = beta * (batch.policy_w[i] - batch.ref_w[i]);
    const double rl = beta * (batch.policy_l[i] - batch.ref_l[i]);
    const double z = rw - rl - batch.margin[i];
    total += Softplus(-z);
    const double dz = -SigmoidOfNegative(z) * inv_n;
    out.grad_policy_w[i] = dz * beta;
    out.grad_ref_w[i] = -dz * beta;
    out.grad_policy_l[i] = -dz * beta;
    out.grad_ref_l[i] = dz * beta;
  }
  out.loss = total * inv_n;
  return out;
}

PreferenceLoss DpoLoss(const PreferenceBatch& batch) {
  PreferenceBatch zero = batch;
  zero.margin.assign(batch.policy_w.size(), 0.0);
  return MdpoLoss(zero);
}

void SftBatch::Validate() const {
  if (token_logprobs.empty()) throw Error(ErrorCode::kInvalidArgument, "SFT batch is empty");
  for (const auto& ex : token_logprobs) {
    if (ex.empty()) throw Error(ErrorCode::kInvalidArgument, "SFT example without tokens");
    CheckFinite(ex, "token_logprobs");
    for (double x : ex) {
      if (x > 0.0) throw Error(ErrorCode::kInvalidArgument, "token log-probability above 0");
    }
  }
}

SftBatch SftBatch::FromJson(const nlohmann::json& j) {
  try {
    SftBatch b;
    b.token_logprobs = j.at("examples").get<std::vector<std::vector<double>>>();
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad SFT batch: ") + e.what());
  }
}

double SftLoss(const SftBatch& batch) {
  batch.Validate();
  double total = 0.0;
  for (const auto& ex : batch.token_logprobs) {
    for (double lp : ex) total += lp;
  }
  return -total / static_cast<double>(batch.token_logprobs.size());
}

double ComputeMargin(double winner_reward, double loser_reward) {
  for (double r : {winner_reward, loser_reward}) {
    if (!(r >= 0.0 && r <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "reward outside [0, 1]");
  }
  return winner_reward - loser_reward;
}

}  // namespace sqldecomp
