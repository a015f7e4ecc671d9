#include "golden.hpp"

#include <map>
#include <string>

#include "equispectra/error.hpp"

namespace equispectra::cli {

namespace {

constexpr std::string_view kDisk = R"({
  "variables": ["x1", "x2"],
  "Mbar": [["1", "x1", "x2"], ["x1", "1", "0"], ["x2", "0", "1"]],
  "gram0": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
  "F": ["1", "-x1", "-x2"],
  "B": [["1", "c", "s"], ["0", "s", "-c"]]
})";

constexpr std::string_view kHermitian = R"({
  "variables": ["a11", "a12", "a22", "b12"],
  "Mbar": [
    ["1/2*a11 + 1/2*a22", "a12", "1/2*a11 - 1/2*a22", "-b12"],
    ["a12", "1/2*a11 + 1/2*a22", "0", "0"],
    ["1/2*a11 - 1/2*a22", "0", "1/2*a11 + 1/2*a22", "0"],
    ["-b12", "0", "0", "1/2*a11 + 1/2*a22"]
  ],
  "gram0": [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
  "F": ["1 + 1/2*a11 + 1/2*a22", "-a12", "-1/2*a11 + 1/2*a22", "b12"],
  "B": [
    ["0", "1 - 2*y^2 - 2*s^2", "-2*x*s + 2*y*t", "-2*x*y - 2*s*t"],
    ["1", "-2*x*s - 2*y*t", "1 - 2*x^2 - 2*y^2", "-2*x*t + 2*y*s"],
    ["0", "-2*x*y + 2*s*t", "2*x*t + 2*y*s", "1 - 2*x^2 - 2*s^2"]
  ]
})";

// Rational form diag(1, 1/sqrt2, 1/sqrt2) Mbar diag(1, 1/sqrt2, 1/sqrt2) of the
// published pencil, in coordinates centred at the uniform measure.
constexpr std::string_view kQuartic = R"({
  "variables": ["l1", "l2", "l3", "l4", "l5"],
  "center": ["3/8", "0", "1/8", "0", "3/8"],
  "Mbar_rational": [
    ["1 + l1 + 2*l3 + l5", "-l1 + l5", "-2*l2 - 2*l4"],
    ["-l1 + l5", "1/2 + l1 - 2*l3 + l5", "2*l2 - 2*l4"],
    ["-2*l2 - 2*l4", "2*l2 - 2*l4", "1/2 + 4*l3"]
  ],
  "congruence": [["1", "-1", "0"], ["0", "0", "-2"], ["1", "1", "0"]]
})";

}  // namespace

const Json& golden(std::string_view name) {
  static const std::map<std::string, Json, std::less<>> docs{
      {"disk", parse_document(kDisk, "golden:disk")},
      {"hermitian", parse_document(kHermitian, "golden:hermitian")},
      {"quartic", parse_document(kQuartic, "golden:quartic")},
  };
  auto it = docs.find(name);
  if (it == docs.end()) throw DomainError("no golden document named '" + std::string(name) + "'");
  return it->second;
}

const std::vector<std::string>& golden_keys() {
  static const std::vector<std::string> keys{"variables", "Mbar", "gram0", "F", "B"};
  return keys;
}

Json golden_view(const Json& doc) {
  Json out = Json::object();
  for (const auto& k : golden_keys())
    if (doc.contains(k)) out[k] = doc[k];
  return out;
}

}  // namespace equispectra::cli
