#pragma once

// Catalog of exact binomial identities, each checked as rational equality over
// bounded parameter boxes. Entries are data: adding one never touches the
// sweep engine.

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "exactnum.hpp"
#include "report.hpp"

namespace trisum {

enum class IdentityId { I1, I2, I3, I4, I5, I6, I7, I8, I9 };

using IdentityEvaluator = std::function<ExactRational(std::span<const long>)>;

/// One "lhs == rhs" relation inside an identity. Several relations share the
/// identity's parameters (e.g. the two displayed forms of I1).
struct IdentityRelation {
  std::string label;
  IdentityEvaluator lhs;
  IdentityEvaluator rhs;
};

struct IdentityEntry {
  IdentityId id;
  std::string name;
  std::string statement;
  std::vector<std::string> params;
  std::function<bool(std::span<const long>)> in_domain;
  std::vector<IdentityRelation> relations;
};

const std::vector<IdentityEntry>& identity_catalog();
const IdentityEntry& identity(IdentityId id);
/// "I1".."I9"; throws std::invalid_argument listing the valid ids.
IdentityId parse_identity_id(std::string_view name);
std::string to_string(IdentityId id);

/// Checks every relation of `id` at `params`. Throws DomainError when the
/// parameters are outside the identity's domain.
CheckReport check_identity(IdentityId id, std::span<const long> params);

/// Exhaustive check over the box 0 <= param_j <= bounds[j] intersected with
/// the domain. bounds.size() must equal the identity's arity.
SweepOutcome sweep_identity(IdentityId id, std::span<const long> bounds, unsigned workers = 1);

/// n * sum_s C(n+s,2s)C(2s,s)(n-s)/(s+1) * sum_{m=s}^{2s} sum_{i=0}^{s}
///   weight * C(m,i)C(s,i)C(i,m-s) / ((2i-shift)(2m-2i-shift)).
/// With (weight, shift) = (1, 1) this equals sum_{k<n}(2k+1)R_k^2; with
/// (81, 3) it equals 9 sum_{k<n}(2k+1)W_k^2.
ExactRational collapsed_square_sum(long n, long weight, long shift);

}  // namespace trisum
