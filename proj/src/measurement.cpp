#include <schrodnet/measurement.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <stdexcept>

namespace schrodnet {

void MeasurementMatrix::enforce_conservation() {
  const int n = size();
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) s += m(i, j);
    m(i, i) = -s;
  }
}

double MeasurementMatrix::symmetry_defect() const {
  const double scale = (m - Matrix(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (m - m.transpose()).cwiseAbs().maxCoeff() / scale;
}

double MeasurementMatrix::row_sum_defect() const {
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (m * Vector::Ones(size())).cwiseAbs().maxCoeff() / scale;
}

bool MeasurementMatrix::offdiag_negative() const {
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j)
      if (i != j && m(i, j) >= 0.0) return false;
  return true;
}

MeasurementMatrix MeasurementMatrix::from_offdiag(const Matrix& offdiag) {
  MeasurementMatrix M{0.5 * (offdiag + offdiag.transpose())};
  M.enforce_conservation();
  return M;
}

std::string measurements_to_json(const MeasurementMatrix& M) {
  nlohmann::json j;
  j["n"] = M.size();
  std::vector<double> entries;
  entries.reserve(M.size() * M.size());
  for (int i = 0; i < M.size(); ++i)
    for (int k = 0; k < M.size(); ++k) entries.push_back(M.m(i, k));
  j["entries"] = entries;
  return j.dump(2);
}

MeasurementMatrix measurements_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const int n = j.at("n").get<int>();
  const auto entries = j.at("entries").get<std::vector<double>>();
  if (static_cast<int>(entries.size()) != n * n)
    throw std::runtime_error("measurement matrix: entry count mismatch");
  MeasurementMatrix M{Matrix(n, n)};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) M.m(i, k) = entries[i * n + k];
  return M;
}

void save_measurements(const MeasurementMatrix& M, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << measurements_to_json(M) << "\n";
}

MeasurementMatrix load_measurements(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return measurements_from_json(text);
}

}  // namespace schrodnet
