#include "trisum/trisum.h"

#include <algorithm>
#include <chrono>
#include <exception>
#include <map>
#include <memory>
#include <new>
#include <string>
#include <thread>
#include <vector>

#include "congruences.hpp"
#include "divisibility.hpp"
#include "errors.hpp"
#include "explorer.hpp"
#include "identities.hpp"
#include "parallel.hpp"
#include "recurrences.hpp"
#include "sequences.hpp"

struct trisum_context {
  unsigned workers = 1;
  std::string last_error;
};

struct trisum_result {
  std::vector<std::string> items;
  std::size_t failures = 0;
};

namespace {

using namespace trisum;
using Params = std::vector<std::pair<std::string, long long>>;

constexpr const char* kTheoremIds = "eq5 new5 eq6 new6 sun";
constexpr const char* kLemmaIds = "p2i1 p2i3 X Y div4 fourcases bober";
constexpr const char* kIdentityIds = "I1 I2 I3 I4 I5 I6 I7 I8 I9";
constexpr const char* kRecurrenceIds = "R5 R3 W5 W3 combX combZ";
constexpr const char* kStepIds =
    "S1 S2 S3 S4 S5 S6 S7 S8 S9 S10 S11 S12 S13 S14 S15 S16 S17 S18 S19 S20 S21 S22 S23 S24 all";

unsigned effective_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

[[noreturn]] void unknown_id(const char* family, const std::string& id, const char* valid) {
  throw std::invalid_argument(std::string("unknown ") + family + " id '" + id + "' (valid: " + valid + ")");
}

/// Runs fn, translating exceptions to status codes.
template <typename Fn>
trisum_status guarded(trisum_context* ctx, Fn&& fn) {
  if (ctx == nullptr) return TRISUM_E_INVALID_ARGUMENT;
  ctx->last_error.clear();
  try {
    fn();
    return TRISUM_OK;
  } catch (const DomainError& e) {
    ctx->last_error = e.what();
    return TRISUM_E_DOMAIN;
  } catch (const CheckpointMismatch& e) {
    ctx->last_error = e.what();
    return TRISUM_E_CHECKPOINT_MISMATCH;
  } catch (const IoError& e) {
    ctx->last_error = e.what();
    return TRISUM_E_IO;
  } catch (const ArithmeticError& e) {
    ctx->last_error = e.what();
    return TRISUM_E_ARITHMETIC;
  } catch (const std::invalid_argument& e) {
    ctx->last_error = e.what();
    return TRISUM_E_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    ctx->last_error = "out of memory";
    return TRISUM_E_INTERNAL;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return TRISUM_E_INTERNAL;
  } catch (...) {
    ctx->last_error = "unknown error";
    return TRISUM_E_INTERNAL;
  }
}

void add_report(trisum_result& out, const CheckReport& r) {
  out.items.push_back(to_json(r).dump());
  if (!r.passed()) ++out.failures;
}

/// Runs a sweep and appends its failures and a timed summary.
template <typename Sweep>
void add_outcome(trisum_result& out, Sweep&& sweep, Params params) {
  const auto start = std::chrono::steady_clock::now();
  const SweepOutcome o = sweep();
  for (const auto& f : o.failures) add_report(out, f);
  CheckReport s = o.summary(std::move(params));
  s.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out.items.push_back(to_json(s).dump());
  // The summary repeats the failures above; count it only when it alone fails.
  if (!s.passed() && o.failures.empty()) ++out.failures;
}

std::vector<unsigned long> select_primes(const trisum_check_args& a, bool (*in_domain)(unsigned long)) {
  if (a.prime_count > 0) {
    if (a.primes == nullptr) throw std::invalid_argument("primes is NULL but prime_count > 0");
    std::vector<unsigned long> out(a.primes, a.primes + a.prime_count);
    for (unsigned long p : out) {
      if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    }
    return out;
  }
  if (a.max_n == 0) throw std::invalid_argument("need a prime list or max_n");
  std::vector<unsigned long> out;
  for (unsigned long p : primes_between(std::max(2ul, a.min_p), a.max_n)) {
    if (in_domain(p)) out.push_back(p);
  }
  return out;
}

bool odd_prime(unsigned long p) { return p > 2; }
bool above_3(unsigned long p) { return p > 3; }
bool one_mod_4(unsigned long p) { return p % 4 == 1; }

unsigned require_max_n(const trisum_check_args& a) {
  if (a.max_n == 0) throw std::invalid_argument("max_n must be >= 1");
  if (a.max_n > 1000000) throw std::invalid_argument("max_n is too large");
  return static_cast<unsigned>(a.max_n);
}

void verify_theorem(const std::string& id, const trisum_check_args& a, unsigned workers,
                    trisum_result& out) {
  if (id == "eq5" || id == "eq6") {
    const unsigned max_n = require_max_n(a);
    add_outcome(out, [&] {
      return id == "eq5" ? sweep_divisibility_R(max_n, workers) : sweep_divisibility_W(max_n, workers);
    }, {{"max_n", max_n}});
  } else if (id == "new5") {
    for (unsigned long p : select_primes(a, odd_prime)) add_report(out, check_supercongruence_R(p));
  } else if (id == "new6") {
    for (unsigned long p : select_primes(a, above_3)) add_report(out, check_supercongruence_W(p));
  } else if (id == "sun") {
    for (unsigned long p : select_primes(a, one_mod_4)) add_report(out, check_sun_half_congruence(p));
  } else {
    unknown_id("theorem", id, kTheoremIds);
  }
}

void verify_lemma(const std::string& id, const trisum_check_args& a, unsigned workers,
                  trisum_result& out) {
  if (id == "p2i1" || id == "p2i3") {
    const DoubleSumLemma which = parse_double_sum_lemma(id);
    const auto primes = select_primes(a, which == DoubleSumLemma::P2i1 ? odd_prime : above_3);
    std::vector<CheckReport> reports(primes.size());
    parallel_for(primes.size(), workers, [&](std::size_t i) {
      const std::size_t j = primes.size() - 1 - i;  // largest first
      reports[j] = check_double_sum_lemma(which, primes[j]);
    });
    for (const auto& r : reports) add_report(out, r);
  } else if (id == "X") {
    add_report(out, check_lemma_X(require_max_n(a), workers));
  } else if (id == "Y") {
    add_report(out, check_lemma_Y(require_max_n(a), workers));
  } else if (id == "div4") {
    const unsigned max_n = require_max_n(a);
    add_outcome(out, [&] { return sweep_divisibility(max_n, workers); }, {{"max_n", max_n}});
  } else if (id == "fourcases" || id == "bober") {
    const unsigned max_n = require_max_n(a);
    const unsigned long max_d = a.max_d != 0 ? a.max_d : 2ul * max_n;
    const Params params = {{"max_n", max_n}, {"max_d", static_cast<long long>(max_d)}};
    if (id == "bober") {
      add_outcome(out, [&] { return sweep_bober(max_n, max_d); }, params);
    } else {
      add_outcome(out, [&] { return sweep_floor_inequality(max_n, max_d, workers); }, params);
      add_outcome(out, [&] { return sweep_floor_cases(max_n, max_d); }, params);
    }
  } else {
    unknown_id("lemma", id, kLemmaIds);
  }
}

std::vector<long> default_identity_bounds(IdentityId id) {
  const std::size_t arity = identity(id).params.size();
  long bound = 30;
  if (id == IdentityId::I1) bound = 15;
  if (id == IdentityId::I7 || id == IdentityId::I8) bound = 40;
  return std::vector<long>(arity, bound);
}

void verify_identity(const std::string& id, const trisum_check_args& a, unsigned workers,
                     trisum_result& out) {
  IdentityId which{};
  try {
    which = parse_identity_id(id);
  } catch (const std::invalid_argument&) {
    unknown_id("identity", id, kIdentityIds);
  }
  const auto& entry = identity(which);
  std::vector<long> bounds;
  if (a.bound_count == 0) {
    bounds = default_identity_bounds(which);
  } else {
    if (a.bounds == nullptr) throw std::invalid_argument("bounds is NULL but bound_count > 0");
    bounds.assign(a.bounds, a.bounds + a.bound_count);
  }
  if (bounds.size() != entry.params.size()) {
    std::string names;
    for (const auto& p : entry.params) names += (names.empty() ? "" : ",") + p;
    throw std::invalid_argument(entry.name + " takes " + std::to_string(entry.params.size()) +
                                " bounds (" + names + "), got " + std::to_string(bounds.size()));
  }
  Params params;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (bounds[i] < 0) throw std::invalid_argument("identity bounds must be >= 0");
    params.emplace_back("max_" + entry.params[i], bounds[i]);
  }
  add_outcome(out, [&] { return sweep_identity(which, bounds, workers); }, std::move(params));
}

void verify_recurrence(const std::string& id, const trisum_check_args& a, unsigned workers,
                       trisum_result& out) {
  if (id == "combX" || id == "combZ") {
    const unsigned max_n = require_max_n(a);
    const unsigned trials = a.trials != 0 ? a.trials : 10;
    add_report(out, verify_operator_combination(parse_combination_id(id), trials, max_n, a.seed));
    return;
  }
  RecurrenceId which{};
  try {
    which = parse_recurrence_id(id);
  } catch (const std::invalid_argument&) {
    unknown_id("recurrence", id, kRecurrenceIds);
  }
  add_report(out, verify_annihilates(which, require_max_n(a), workers));
}

void verify_step(const std::string& id, const trisum_check_args& a, unsigned workers,
                 trisum_result& out) {
  std::vector<StepId> steps;
  if (id == "all") {
    for (const auto& e : step_catalog()) steps.push_back(e.id);
  } else {
    try {
      steps.push_back(parse_step_id(id));
    } catch (const std::invalid_argument&) {
      unknown_id("step", id, kStepIds);
    }
  }
  const std::vector<unsigned long> primes = select_primes(a, odd_prime);
  if (a.prime_count > 0 && steps.size() == 1) {
    for (unsigned long p : primes) {
      if (!step_in_domain(steps[0], p)) throw DomainError(id + " is not stated for p = " + std::to_string(p));
    }
  }
  Params params;
  if (!primes.empty()) {
    params = {{"min_p", static_cast<long long>(primes.front())},
              {"max_p", static_cast<long long>(primes.back())}};
  }
  for (StepId s : steps) {
    add_outcome(out, [&] {
      SweepOutcome per = sweep_proof_steps(std::span<const StepId>(&s, 1), primes, workers);
      per.check = step(s).name;
      std::sort(per.failures.begin(), per.failures.end(),
                [](const CheckReport& x, const CheckReport& y) { return x.params < y.params; });
      return per;
    }, params);
  }
}

std::string value_text(const ExactRational& q) {
  return q.get_den() == 1 ? to_string(q.get_num()) : to_string(q);
}

trisum_result* release(std::unique_ptr<trisum_result>& r) { return r.release(); }

}  // namespace

extern "C" {

const char* trisum_version(void) { return "1.0.0"; }

const char* trisum_status_name(trisum_status status) {
  switch (status) {
    case TRISUM_OK: return "ok";
    case TRISUM_E_INVALID_ARGUMENT: return "invalid argument";
    case TRISUM_E_DOMAIN: return "outside domain";
    case TRISUM_E_IO: return "i/o error";
    case TRISUM_E_CHECKPOINT_MISMATCH: return "checkpoint mismatch";
    case TRISUM_E_ARITHMETIC: return "arithmetic error";
    case TRISUM_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

trisum_status trisum_context_create(trisum_context** out) {
  if (out == nullptr) return TRISUM_E_INVALID_ARGUMENT;
  *out = new (std::nothrow) trisum_context();
  return *out != nullptr ? TRISUM_OK : TRISUM_E_INTERNAL;
}

void trisum_context_destroy(trisum_context* ctx) { delete ctx; }

trisum_status trisum_context_set_workers(trisum_context* ctx, unsigned workers) {
  if (ctx == nullptr) return TRISUM_E_INVALID_ARGUMENT;
  ctx->workers = effective_workers(workers);
  return TRISUM_OK;
}

const char* trisum_last_error(const trisum_context* ctx) {
  return ctx != nullptr ? ctx->last_error.c_str() : "";
}

size_t trisum_result_size(const trisum_result* result) {
  return result != nullptr ? result->items.size() : 0;
}

const char* trisum_result_item(const trisum_result* result, size_t index) {
  if (result == nullptr || index >= result->items.size()) return nullptr;
  return result->items[index].c_str();
}

size_t trisum_result_failures(const trisum_result* result) {
  return result != nullptr ? result->failures : 0;
}

void trisum_result_destroy(trisum_result* result) { delete result; }

trisum_status trisum_sequence(trisum_context* ctx, const char* name, unsigned r, unsigned from,
                              unsigned count, trisum_result** out) {
  return guarded(ctx, [&] {
    if (name == nullptr || out == nullptr) throw std::invalid_argument("name and out are required");
    *out = nullptr;
    const std::string seq = name;
    if (seq == "Rg" && r == 0) throw std::invalid_argument("Rg needs r >= 1");
    if (count > 100000 || from > 100000) throw std::invalid_argument("sequence range is too large");
    auto result = std::make_unique<trisum_result>();
    if (seq == "Y") {
      for (unsigned n = from; n < from + count; ++n) result->items.push_back(to_string(eval_Y(n)));
    } else {
      const auto values = eval_prefix(SequenceId::parse(seq, r), from + count, ctx->workers);
      for (unsigned n = from; n < from + count; ++n) result->items.push_back(value_text(values[n]));
    }
    *out = release(result);
  });
}

void trisum_check_args_init(trisum_check_args* args) {
  if (args == nullptr) return;
  *args = trisum_check_args{};
  args->trials = 10;
  args->seed = 1;
}

trisum_status trisum_verify(trisum_context* ctx, const char* family, const char* id,
                            const trisum_check_args* args, trisum_result** out) {
  return guarded(ctx, [&] {
    if (family == nullptr || id == nullptr || args == nullptr || out == nullptr) {
      throw std::invalid_argument("family, id, args and out are required");
    }
    *out = nullptr;
    auto result = std::make_unique<trisum_result>();
    const std::string fam = family;
    if (fam == "theorem") {
      verify_theorem(id, *args, ctx->workers, *result);
    } else if (fam == "lemma") {
      verify_lemma(id, *args, ctx->workers, *result);
    } else if (fam == "identity") {
      verify_identity(id, *args, ctx->workers, *result);
    } else if (fam == "recurrence") {
      verify_recurrence(id, *args, ctx->workers, *result);
    } else if (fam == "step") {
      verify_step(id, *args, ctx->workers, *result);
    } else {
      throw std::invalid_argument("unknown family '" + fam +
                                  "' (valid: theorem lemma identity recurrence step)");
    }
    *out = release(result);
  });
}

const char* trisum_valid_ids(const char* family) {
  if (family == nullptr) return nullptr;
  static const std::map<std::string, const char*> ids = {
      {"theorem", kTheoremIds},       {"lemma", kLemmaIds},
      {"identity", kIdentityIds},     {"recurrence", kRecurrenceIds},
      {"step", kStepIds},             {"conjecture", "C1 C2 C3"},
      {"sequence", "R W Rg X Z Y"}};
  const auto it = ids.find(family);
  return it != ids.end() ? it->second : nullptr;
}

trisum_status trisum_explore_conjecture(trisum_context* ctx, const trisum_sweep_args* args,
                                        trisum_result** out) {
  return guarded(ctx, [&] {
    if (args == nullptr || out == nullptr || args->conjecture == nullptr || args->output == nullptr) {
      throw std::invalid_argument("conjecture, output and out are required");
    }
    *out = nullptr;
    SweepConfig config;
    config.conjecture = builtin_conjecture(parse_conjecture_id(args->conjecture));
    config.r = args->r;
    config.from = args->from;
    config.to = args->to;
    config.output = args->output;
    if (args->checkpoint != nullptr) config.checkpoint = args->checkpoint;
    config.resume = args->resume != 0;
    if (args->batch != 0) config.batch = args->batch;
    config.workers = ctx->workers;
    const SweepResult sweep = run_sweep(std::move(config));
    auto result = std::make_unique<trisum_result>();
    add_report(*result, sweep.summary);
    *out = release(result);
  });
}

trisum_status trisum_minimal_multiplier(trisum_context* ctx, unsigned r, unsigned max_n,
                                        trisum_result** out) {
  return guarded(ctx, [&] {
    if (out == nullptr) throw std::invalid_argument("out is required");
    *out = nullptr;
    if (max_n == 0) throw std::invalid_argument("max_n must be >= 1");
    auto result = std::make_unique<trisum_result>();
    result->items.push_back(to_string(minimal_multiplier(r, max_n, ctx->workers)));
    *out = release(result);
  });
}

}  // extern "C"
