#include <schrodnet/regularize.hpp>

#include <schrodnet/netgraph.hpp>
#include <schrodnet/recovery.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace schrodnet {

void LumpingPlan::validate() const {
  if (target_n <= 0 || original_n <= 0 || target_n > original_n)
    throw std::invalid_argument("lumping plan: bad sizes");
  if (static_cast<int>(sets.size()) != target_n ||
      static_cast<int>(weights.size()) != target_n)
    throw std::invalid_argument("lumping plan: wrong number of sets");
  std::vector<bool> used(original_n, false);
  for (int i = 0; i < target_n; ++i) {
    if (sets[i].empty() || sets[i].size() != weights[i].size())
      throw std::invalid_argument("lumping plan: malformed set");
    double wsum = 0.0;
    for (size_t k = 0; k < sets[i].size(); ++k) {
      const int j = sets[i][k];
      if (j < 0 || j >= original_n || used[j])
        throw std::invalid_argument("lumping plan: index out of range or reused");
      used[j] = true;
      if (k > 0 && j != sets[i][k - 1] + 1)
        throw std::invalid_argument("lumping plan: set not consecutive");
      if (weights[i][k] <= 0.0)
        throw std::invalid_argument("lumping plan: nonpositive weight");
      wsum += weights[i][k];
    }
    if (std::abs(wsum - 1.0) > 1e-12)
      throw std::invalid_argument("lumping plan: weights do not sum to one");
  }
}

LumpingPlan LumpingPlan::uniform(int original_n, int target_n) {
  if (target_n <= 0 || original_n <= 0)
    throw std::invalid_argument("lumping plan: bad sizes");
  LumpingPlan plan;
  plan.original_n = original_n;
  plan.target_n = target_n;
  const int block = original_n / target_n;
  if (block < 1) throw std::invalid_argument("lumping plan: target too large");
  const int leftover = original_n - block * target_n;
  const int start = leftover / 2;
  for (int i = 0; i < target_n; ++i) {
    std::vector<int> set(block);
    for (int k = 0; k < block; ++k) set[k] = start + i * block + k;
    plan.sets.push_back(std::move(set));
    plan.weights.emplace_back(block, 1.0 / block);
  }
  plan.validate();
  return plan;
}

std::string LumpingPlan::to_json() const {
  nlohmann::json j;
  j["original_n"] = original_n;
  j["target_n"] = target_n;
  j["sets"] = sets;
  j["weights"] = weights;
  return j.dump(2);
}

LumpingPlan LumpingPlan::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  LumpingPlan plan;
  plan.original_n = j.at("original_n");
  plan.target_n = j.at("target_n");
  plan.sets = j.at("sets").get<std::vector<std::vector<int>>>();
  plan.weights = j.at("weights").get<std::vector<std::vector<double>>>();
  plan.validate();
  return plan;
}

BoundaryFunctionSet LumpingPlan::apply(const BoundaryFunctionSet& phi) const {
  validate();
  if (phi.size() != original_n)
    throw std::invalid_argument("lumping plan: profile count mismatch");
  return phi.combine(sets, weights);
}

MeasurementMatrix lump_measurements(const MeasurementMatrix& M,
                                    const LumpingPlan& plan) {
  plan.validate();
  if (M.size() != plan.original_n)
    throw std::invalid_argument("lump_measurements: size mismatch");
  const int n = plan.target_n;
  Matrix out = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double acc = 0.0;
      for (size_t p = 0; p < plan.sets[i].size(); ++p)
        for (size_t r = 0; r < plan.sets[j].size(); ++r)
          acc += plan.weights[i][p] * plan.weights[j][r] *
                 M.m(plan.sets[i][p], plan.sets[j][r]);
      out(i, j) = out(j, i) = acc;
    }
  MeasurementMatrix lumped{out};
  lumped.enforce_conservation();
  return lumped;
}

MeasurementMatrix add_noise(const MeasurementMatrix& M, double rel_level,
                            unsigned seed) {
  const int n = M.size();
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) scale = std::max(scale, std::abs(M.m(i, j)));
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist(0.0, rel_level * scale);
  MeasurementMatrix out = M;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      out.m(i, j) += dist(rng);
      out.m(j, i) = out.m(i, j);
    }
  out.enforce_conservation();
  return out;
}

SizeSelection select_network_size(const MeasurementMatrix& M_noisy,
                                  const std::vector<int>& candidates) {
  const int N = M_noisy.size();
  SizeSelection sel;
  for (int cand : candidates) {
    if (cand % 2 == 0 || cand > N)
      throw std::invalid_argument("select_network_size: bad candidate");
    LumpingPlan plan = cand == N ? LumpingPlan{} : LumpingPlan::uniform(N, cand);
    MeasurementMatrix lumped = M_noisy;
    if (cand != N) lumped = lump_measurements(M_noisy, plan);
    std::ostringstream line;
    line << "n=" << cand << ": ";
    try {
      const CircularNetwork net = build_cmn(cand);
      const Conductivity gamma = recover_conductivity(net, lumped);
      line << "ok, min gamma " << gamma.minCoeff();
      sel.log.push_back(line.str());
      sel.n = cand;
      sel.lumped = lumped;
      sel.gamma = gamma;
      if (cand == N) {
        plan.original_n = plan.target_n = N;
        for (int i = 0; i < N; ++i) {
          plan.sets.push_back({i});
          plan.weights.push_back({1.0});
        }
      }
      sel.plan = plan;
      return sel;
    } catch (const RecoveryError& err) {
      line << "failed (" << err.what() << ")";
      sel.log.push_back(line.str());
    }
  }
  std::ostringstream msg;
  msg << "select_network_size: all candidates failed\n";
  for (const auto& l : sel.log) msg << "  " << l << "\n";
  throw std::runtime_error(msg.str());
}

}  // namespace schrodnet
