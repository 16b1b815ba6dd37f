#include "pgb/state_io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "pgb/errors.hpp"
#include "pgb/report_io.hpp"

namespace pgb {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

constexpr long long kMaxDim = 4096;

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ParseError("input is not valid JSON");
  return j;
}

std::vector<int> read_dims(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw ParseError("\"dims\" must be a nonempty array of positive integers");
  }
  std::vector<int> dims;
  for (const json& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 1 ||
        v.get<long long>() > kMaxDim) {
      throw ParseError("subsystem dimensions must be integers in [1, " +
                       std::to_string(kMaxDim) + "]");
    }
    dims.push_back(v.get<int>());
  }
  return dims;
}

DensityOperator density_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("matrix")) {
    throw ParseError("density object needs \"dims\" and \"matrix\" fields");
  }
  std::vector<int> dims = read_dims(j.at("dims"));
  long long dim = 1;
  for (int d : dims) {
    dim *= d;
    if (dim > kMaxDim) throw ParseError("total dimension exceeds limit");
  }
  const json& entries = j.at("matrix");
  if (!entries.is_array() ||
      static_cast<long long>(entries.size()) != dim * dim) {
    throw ParseError("\"matrix\" must be a row-major array of dim^2 entries");
  }
  Mat mat(dim, dim);
  for (long long row = 0; row < dim; ++row) {
    for (long long col = 0; col < dim; ++col) {
      const json& cell = entries.at(static_cast<std::size_t>(row * dim + col));
      if (!cell.is_array() || cell.size() != 2 || !cell.at(0).is_number() ||
          !cell.at(1).is_number()) {
        throw ParseError("matrix entries must be [re, im] number pairs");
      }
      mat(row, col) = Cplx(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  return DensityOperator::make(ComplexMatrix(std::move(mat), std::move(dims)));
}

ojson density_to_json(const DensityOperator& rho) {
  ojson j;
  j["dims"] = rho.cm().dims_or_single();
  ojson entries = ojson::array();
  const Mat& m = rho.mat();
  for (Eigen::Index row = 0; row < m.rows(); ++row) {
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
      entries.push_back({m(row, col).real(), m(row, col).imag()});
    }
  }
  j["matrix"] = std::move(entries);
  return j;
}

Ensemble ensemble_from_json(const json& j) {
  if (!j.is_object() || !j.contains("priors") || !j.contains("states")) {
    throw ParseError("ensemble object needs \"priors\" and \"states\" fields");
  }
  const json& pj = j.at("priors");
  if (!pj.is_array() || pj.empty()) {
    throw ParseError("\"priors\" must be a nonempty array of numbers");
  }
  std::vector<double> priors;
  for (const json& v : pj) {
    if (!v.is_number()) throw ParseError("priors must be numbers");
    priors.push_back(v.get<double>());
  }
  const json& sj = j.at("states");
  if (!sj.is_array()) throw ParseError("\"states\" must be an array");
  std::vector<DensityOperator> states;
  for (const json& s : sj) states.push_back(density_from_json(s));
  return Ensemble::make(std::move(priors), std::move(states));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path);
  return buf.str();
}

}  // namespace

DensityOperator density_from_json_text(const std::string& text) {
  return density_from_json(parse_text(text));
}

Ensemble ensemble_from_json_text(const std::string& text) {
  return ensemble_from_json(parse_text(text));
}

std::string density_to_json_text(const DensityOperator& rho) {
  return density_to_json(rho).dump(2) + "\n";
}

std::string ensemble_to_json_text(const Ensemble& e) {
  ojson j;
  j["priors"] = e.priors;
  ojson states = ojson::array();
  for (const DensityOperator& s : e.states) states.push_back(density_to_json(s));
  j["states"] = std::move(states);
  return j.dump(2) + "\n";
}

DensityOperator load_density(const std::string& path) {
  return density_from_json_text(read_file(path));
}

Ensemble load_ensemble(const std::string& path) {
  return ensemble_from_json_text(read_file(path));
}

void save_density(const DensityOperator& rho, const std::string& path) {
  write_atomic(path, density_to_json_text(rho));
}

void save_ensemble(const Ensemble& e, const std::string& path) {
  write_atomic(path, ensemble_to_json_text(e));
}

}  // namespace pgb
