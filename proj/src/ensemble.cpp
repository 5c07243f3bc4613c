#include "multipoles/ensemble.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace multipoles {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  const std::uint64_t a = splitmix64(state);
  state ^= stream * 0xd1b54a32d192ed03ULL;
  const std::uint64_t b = splitmix64(state);
  const std::uint64_t c = splitmix64(state);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
  return Rng(seq);
}

CoefficientVector::CoefficientVector(int ell, std::vector<complex> coeffs)
    : ell_(ell), coeffs_(std::move(coeffs)) {
  if (ell_ < 0) throw FormatError("degree must be non-negative");
  if (coeffs_.size() != static_cast<std::size_t>(ell_) + 1) {
    throw FormatError("coefficient count " + std::to_string(coeffs_.size()) +
                      " does not match degree " + std::to_string(ell_));
  }
  if (std::abs(coeffs_[0].imag()) > kImagTolerance) {
    throw FormatError("a_0 must be real");
  }
  coeffs_[0] = complex(coeffs_[0].real(), 0.0);
}

complex CoefficientVector::operator[](int m) const {
  if (m >= 0) return coeffs_.at(static_cast<std::size_t>(m));
  const complex c = std::conj(coeffs_.at(static_cast<std::size_t>(-m)));
  return (m % 2 == 0) ? c : -c;
}

CoefficientVector CoefficientVector::scaled(double factor) const {
  std::vector<complex> out(coeffs_);
  for (auto& a : out) a *= factor;
  return CoefficientVector(ell_, std::move(out));
}

double CoefficientVector::full_norm_squared() const {
  double total = std::norm(coeffs_[0]);
  for (std::size_t m = 1; m < coeffs_.size(); ++m) total += 2.0 * std::norm(coeffs_[m]);
  return total;
}

CoefficientVector sample_coefficients(int ell, Rng& rng) {
  if (ell < 1) throw FormatError("sampling requires ell >= 1");
  std::normal_distribution<double> unit(0.0, 1.0);
  const double half = std::sqrt(0.5);
  std::vector<complex> a(static_cast<std::size_t>(ell) + 1);
  a[0] = unit(rng);
  for (int m = 1; m <= ell; ++m) {
    const double re = half * unit(rng);
    const double im = half * unit(rng);
    a[static_cast<std::size_t>(m)] = complex(re, im);
  }
  return CoefficientVector(ell, std::move(a));
}

std::vector<complex> expand_full(const CoefficientVector& cv) {
  const int ell = cv.ell();
  std::vector<complex> full(2 * static_cast<std::size_t>(ell) + 1);
  for (int m = -ell; m <= ell; ++m) full[static_cast<std::size_t>(m + ell)] = cv[m];
  return full;
}

CoefficientVector coefficients_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("coefficient file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("l") || !doc.contains("a")) {
    throw FormatError("coefficient file needs keys \"l\" and \"a\"");
  }
  if (!doc["l"].is_number_integer()) throw FormatError("\"l\" must be an integer");
  const auto ell = doc["l"].get<long long>();
  if (ell < 0 || ell > 100000) throw FormatError("\"l\" out of range");
  const auto& entries = doc["a"];
  if (!entries.is_array()) throw FormatError("\"a\" must be an array");

  std::vector<complex> a;
  a.reserve(entries.size());
  for (const auto& pair : entries) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw FormatError("each entry of \"a\" must be [re, im]");
    }
    a.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return CoefficientVector(static_cast<int>(ell), std::move(a));
}

CoefficientVector read_coefficients(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return coefficients_from_json(buffer.str());
}

std::string coefficients_to_json(const CoefficientVector& cv) {
  nlohmann::json doc;
  doc["l"] = cv.ell();
  auto entries = nlohmann::json::array();
  for (const auto& a : cv.coeffs()) entries.push_back({a.real(), a.imag()});
  doc["a"] = std::move(entries);
  return doc.dump();
}

void write_coefficients(const CoefficientVector& cv, std::ostream& out) {
  out << coefficients_to_json(cv) << '\n';
}

}  // namespace multipoles
