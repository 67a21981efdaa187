#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gct/exact.hpp"
#include "gct/polyspace.hpp"
#include "gct/search.hpp"

namespace gct {

struct PeriodReport {
  NamedObject object;
  long a = 0;                    // stabilizer period
  std::optional<long> a_reduced; // a * gcd(D, m) / D, forms only
  long b = 0;                    // degree period: m a / D for forms, m a for tensors
  std::string source;
};

// Throws InvalidInput for objects with infinite stabilizer period (linear forms).
PeriodReport periods(const NamedObject& obj);

struct MinDegreeReport {
  NamedObject object;
  std::optional<long> b;           // degree period, absent when infinite
  BigInt e_lower = 0;              // certified: e(w) >= e_lower
  std::optional<BigInt> e_exact;   // set when e(w) is decided
  std::string verdict;             // "exact", "lower-bound", "undecided at budget"
  std::string evaluation;          // the deciding quantity and its value, if any
  std::vector<std::string> notes;
};

MinDegreeReport minimal_degree_report(const NamedObject& obj, const SearchOptions& opts = {});

enum class Normality { non_normal, normal_known, unknown };
std::string normality_name(Normality n);

struct NormalityReport {
  Normality flag = Normality::unknown;
  MinDegreeReport degree;
  std::string reason;
};

NormalityReport nonnormality_flag(const NamedObject& obj, const SearchOptions& opts = {});

struct SupportCertificate {
  bool holds = false;
  // Forms: exponent vector -> c_alpha with sum c_alpha alpha = (1,...,1).
  // Tensors: support point -> probability with uniform marginals.
  std::vector<std::pair<Index, Rational>> witness;
  // One primitive integer vector per factor, each summing to zero, pairing
  // nonnegatively with every support point and positively with at least one.
  std::vector<std::vector<BigInt>> separator;
  std::string reductive_condition = "not checked";
};

SupportCertificate polystable_form_support(const SparseForm& w);
SupportCertificate polystable_tensor_support(const SparseTensor& w);
// Named objects also record the reductive-stabilizer condition as satisfied by theorem.
SupportCertificate polystable_named(const NamedObject& obj);

bool verify_certificate(const SparseForm& w, const SupportCertificate& c);
bool verify_certificate(const SparseTensor& w, const SupportCertificate& c);

}  // namespace gct
