#include "eoa/state_io.hpp"

#include <fstream>
#include <stdexcept>

namespace eoa {

namespace {

nlohmann::json complex_to_json(const Complex& z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

Complex complex_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument(where + " must be a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

nlohmann::json state_to_json(const QState& state) {
  nlohmann::json j;
  j["dims"] = state.dims();
  if (state.is_pure()) {
    j["kind"] = "pure";
    nlohmann::json data = nlohmann::json::array();
    for (Index i = 0; i < state.vector().size(); ++i)
      data.push_back(complex_to_json(state.vector()(i)));
    j["data"] = std::move(data);
  } else {
    j["kind"] = "mixed";
    nlohmann::json data = nlohmann::json::array();
    for (Index i = 0; i < state.matrix().rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Index k = 0; k < state.matrix().cols(); ++k)
        row.push_back(complex_to_json(state.matrix()(i, k)));
      data.push_back(std::move(row));
    }
    j["data"] = std::move(data);
  }
  return j;
}

QState state_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("state file must hold a JSON object");
  for (const char* key : {"dims", "kind", "data"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("state file misses field \"") + key + "\"");

  if (!j["dims"].is_array() || j["dims"].empty())
    throw std::invalid_argument("\"dims\" must be a nonempty array");
  Dims dims;
  for (std::size_t i = 0; i < j["dims"].size(); ++i) {
    const auto& d = j["dims"][i];
    if (!d.is_number_integer() || d.get<Index>() < 1)
      throw std::invalid_argument("dims[" + std::to_string(i) + "] must be a positive integer");
    dims.push_back(d.get<Index>());
  }

  const std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
  const nlohmann::json& data = j["data"];
  if (kind == "pure") {
    if (!data.is_array()) throw std::invalid_argument("pure \"data\" must be a flat array");
    Vector psi(static_cast<Index>(data.size()));
    for (std::size_t i = 0; i < data.size(); ++i)
      psi(static_cast<Index>(i)) = complex_from_json(data[i], "data[" + std::to_string(i) + "]");
    return QState::pure(std::move(dims), std::move(psi));
  }
  if (kind == "mixed") {
    if (!data.is_array()) throw std::invalid_argument("mixed \"data\" must be an array of rows");
    const Index d = static_cast<Index>(data.size());
    Matrix rho(d, d);
    for (Index i = 0; i < d; ++i) {
      const auto& row = data[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Index>(row.size()) != d)
        throw std::invalid_argument("data[" + std::to_string(i) + "] must hold " +
                                    std::to_string(d) + " entries");
      for (Index k = 0; k < d; ++k)
        rho(i, k) = complex_from_json(row[static_cast<std::size_t>(k)],
                                      "data[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
    return QState::mixed(std::move(dims), std::move(rho));
  }
  throw std::invalid_argument("\"kind\" must be \"pure\" or \"mixed\"");
}

QState load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open state file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
  return state_from_json(j);
}

void save_state(const std::string& path, const QState& state) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write state file: " + path);
  out << state_to_json(state).dump(2) << '\n';
}

}  // namespace eoa
