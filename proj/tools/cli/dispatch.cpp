#include "dispatch.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace trisum::cli {

namespace {

using nlohmann::json;

// Upper limits used when no range is given: the sizes each check is
// routinely swept to.
unsigned long default_max_n(const std::string& family, const std::string& id) {
  if (family == "theorem") return (id == "eq5" || id == "eq6") ? 500 : 199;
  if (family == "lemma") {
    if (id == "p2i1" || id == "p2i3") return 97;
    if (id == "X" || id == "Y") return 300;
    if (id == "bober") return 100;
    return 60;
  }
  if (family == "recurrence") return (id == "combX" || id == "combZ") ? 50 : 200;
  if (family == "step") return 97;
  return 0;
}

std::vector<std::string> split_ids(const std::string& ids) {
  std::istringstream in(ids);
  std::vector<std::string> out;
  for (std::string s; in >> s;) out.push_back(s);
  return out;
}

bool known_id(Backend& backend, const std::string& family, const std::string& id, std::ostream& err) {
  const std::string valid = backend.valid_ids(family);
  const auto ids = split_ids(valid);
  if (std::find(ids.begin(), ids.end(), id) != ids.end()) return true;
  err << "error: unknown " << family << " id '" << id << "'; valid ids: " << valid << "\n";
  return false;
}

bool parse_ulong(const std::string& s, unsigned long& out) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 12) return false;
  out = std::stoul(s);
  return true;
}

std::string truncated(const std::string& s, std::size_t width = 32) {
  if (s.size() <= width) return s;
  return s.substr(0, width - 3) + "...";
}

std::string params_text(const json& params) {
  std::string out;
  for (const auto& [k, v] : params.items()) {
    if (!out.empty()) out += ' ';
    out += k + "=" + v.dump();
  }
  return out;
}

std::string info_text(const json& report) {
  const json& w = report.value("witness", json::object());
  const std::string status = report.value("status", "");
  std::string out;
  if (status != "pass" && report.contains("detail")) out = report["detail"].get<std::string>();
  auto add = [&out](const std::string& part) {
    if (!out.empty()) out += "; ";
    out += part;
  };
  if (w.contains("valuation")) add("v=" + w["valuation"].get<std::string>());
  for (const char* key : {"checked", "records", "failures", "x", "y", "remainder", "failing_n"}) {
    if (w.contains(key)) add(std::string(key) + "=" + w[key].get<std::string>());
  }
  if (status != "pass") {
    if (w.contains("lhs")) add("lhs=" + truncated(w["lhs"].get<std::string>()));
    if (w.contains("rhs")) add("rhs=" + truncated(w["rhs"].get<std::string>()));
  }
  if (status == "pass" && report.contains("detail")) add(report["detail"].get<std::string>());
  return out;
}

struct Tally {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t error = 0;

  int exit_code() const {
    if (error > 0) return kUsageOrError;
    return fail > 0 ? kSomeFail : kAllPass;
  }
};

struct Output {
  bool json_mode = false;
  bool quiet = false;
};

/// Renders check reports and returns the exit code they imply.
int emit_reports(const std::vector<std::string>& items, const Output& o, std::ostream& out,
                 std::ostream& err) {
  Tally tally;
  std::vector<json> reports;
  for (const auto& item : items) {
    json j;
    try {
      j = json::parse(item);
    } catch (const json::exception& e) {
      err << "error: backend produced malformed report: " << e.what() << "\n";
      return kUsageOrError;
    }
    const std::string status = j.value("status", "error");
    if (status == "pass") {
      ++tally.pass;
    } else if (status == "fail") {
      ++tally.fail;
    } else {
      ++tally.error;
    }
    reports.push_back(std::move(j));
  }

  if (o.json_mode) {
    for (const auto& j : reports) out << j.dump() << '\n';
  } else {
    std::vector<std::array<std::string, 5>> rows;
    for (const auto& j : reports) {
      const std::string status = j.value("status", "error");
      if (o.quiet && status == "pass") continue;
      std::ostringstream ms;
      ms << std::fixed << std::setprecision(1) << j.value("elapsed_ms", 0.0) << "ms";
      rows.push_back({status == "pass" ? "PASS" : status == "fail" ? "FAIL" : "ERROR",
                      j.value("check", "?"), params_text(j.value("params", json::object())),
                      ms.str(), info_text(j)});
    }
    std::array<std::size_t, 4> width{};
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    for (const auto& r : rows) {
      out << std::left << std::setw(static_cast<int>(width[0])) << r[0] << "  "
          << std::setw(static_cast<int>(width[1])) << r[1] << "  "
          << std::setw(static_cast<int>(width[2])) << r[2] << "  " << std::right
          << std::setw(static_cast<int>(width[3])) << r[3];
      if (!r[4].empty()) out << "  " << r[4];
      out << '\n';
    }
  }
  if (!o.quiet) {
    std::ostream& prose = o.json_mode ? err : out;
    prose << reports.size() << (reports.size() == 1 ? " check: " : " checks: ") << tally.pass
          << " passed, " << tally.fail << " failed";
    if (tally.error > 0) prose << ", " << tally.error << " errors";
    prose << '\n';
  }
  return tally.exit_code();
}

int backend_failure(const Reply& reply, std::ostream& err) {
  err << "error: " << reply.error << "\n";
  return kUsageOrError;
}

std::string default_output(const std::string& id, unsigned r, unsigned from, unsigned to) {
  const char* dir = std::getenv("TRISUM_OUT_DIR");
  std::filesystem::path base = (dir != nullptr && *dir != '\0') ? dir : ".";
  std::string name = id;
  if (id == "C3") name += "_r" + std::to_string(r);
  name += "_" + std::to_string(from) + "_" + std::to_string(to) + ".jsonl";
  return (base / name).string();
}

}  // namespace

std::optional<PrimeSelection> parse_prime_selection(const std::string& text) {
  PrimeSelection sel;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    if (!parse_ulong(text.substr(0, dots), sel.lo) || !parse_ulong(text.substr(dots + 2), sel.hi) ||
        sel.lo > sel.hi) {
      return std::nullopt;
    }
    sel.is_range = true;
    return sel;
  }
  std::istringstream in(text);
  for (std::string part; std::getline(in, part, ',');) {
    unsigned long v = 0;
    if (!parse_ulong(part, v)) return std::nullopt;
    sel.list.push_back(v);
  }
  if (sel.list.empty()) return std::nullopt;
  return sel;
}

int dispatch(const std::vector<std::string>& args, Backend& backend, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Exact verification of binomial square-sum divisibility and supercongruences", "trisum"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  unsigned workers = 0;
  bool quiet = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--workers", workers, "Worker threads (default: available parallelism)")
      ->check(CLI::Range(1u, 1024u));
  app.add_flag("--quiet", quiet, "Only failures in text mode; no prose");

  // seq
  auto* seq = app.add_subcommand("seq", "Print sequence values");
  std::string seq_name;
  std::optional<unsigned> seq_n, seq_from, seq_to;
  unsigned seq_r = 0;
  seq->add_option("--name", seq_name, "R, W, Rg, X, Z or Y")->required();
  seq->add_option("--n", seq_n, "Single index")->check(CLI::Range(0u, 100000u));
  seq->add_option("--from", seq_from, "First index of a range")->check(CLI::Range(0u, 100000u));
  seq->add_option("--to", seq_to, "Last index of a range")->check(CLI::Range(0u, 100000u));
  seq->add_option("--r", seq_r, "Parameter r for Rg")->check(CLI::Range(1u, 1000u));

  // verify
  auto* verify = app.add_subcommand("verify", "Run verifications");
  verify->require_subcommand(1);
  VerifyRequest vq;
  std::optional<unsigned long> v_max_n;
  std::string v_primes;
  std::vector<long> v_bounds;
  auto prime_check = [](const std::string& s) -> std::string {
    return parse_prime_selection(s) ? std::string() : "expected a list like 3,5,7 or a range like 3..97";
  };
  auto add_range_opts = [&](CLI::App* sub, bool primes) {
    sub->add_option("--id", vq.id, "Check id")->required();
    sub->add_option("--max-n", v_max_n, "Upper limit of the range")->check(CLI::Range(1ul, 1000000ul));
    if (primes) sub->add_option("--primes", v_primes, "Primes: list a,b,c or range a..b")->check(prime_check);
  };
  auto* v_theorem = verify->add_subcommand("theorem", "Divisibility theorems and supercongruences");
  add_range_opts(v_theorem, true);
  auto* v_lemma = verify->add_subcommand("lemma", "Supporting lemmas");
  add_range_opts(v_lemma, true);
  v_lemma->add_option("--max-d", vq.max_d, "Largest d for floor inequalities")->check(CLI::Range(1ul, 100000ul));
  auto* v_identity = verify->add_subcommand("identity", "Exact binomial identities");
  v_identity->add_option("--id", vq.id, "Identity id")->required();
  v_identity->add_option("--bounds", v_bounds, "Upper bound per parameter")
      ->delimiter(',')
      ->check(CLI::Range(0l, 1000l));
  auto* v_rec = verify->add_subcommand("recurrence", "Recurrences and operator combinations");
  add_range_opts(v_rec, false);
  v_rec->add_option("--trials", vq.trials, "Random sequences per combination")->check(CLI::Range(1u, 10000u));
  v_rec->add_option("--seed", vq.seed, "Seed for the random sequences");
  auto* v_step = verify->add_subcommand("step", "Intermediate relations S1..S24 (or all)");
  add_range_opts(v_step, true);

  // explore
  auto* explore = app.add_subcommand("explore", "Numerical exploration");
  explore->require_subcommand(1);
  auto* e_conj = explore->add_subcommand("conjecture", "Resumable conjecture sweep");
  SweepRequest sq;
  e_conj->add_option("--id", sq.conjecture, "C1, C2 or C3")->required();
  e_conj->add_option("--r", sq.r, "Parameter r for C3")->check(CLI::Range(1u, 1000u));
  e_conj->add_option("--from", sq.from, "First n")->check(CLI::Range(1u, 1000000u));
  e_conj->add_option("--to", sq.to, "Last n")->required()->check(CLI::Range(1u, 1000000u));
  e_conj->add_option("--out", sq.output, "Record file (JSONL)");
  e_conj->add_option("--checkpoint", sq.checkpoint, "Checkpoint file (default: <out>.ckpt)");
  e_conj->add_flag("--resume", sq.resume, "Continue an interrupted sweep");
  auto* e_mm = explore->add_subcommand("minimal-multiplier", "Least multiplier making the R_{k,r} sums divisible");
  unsigned mm_r = 0;
  unsigned mm_max_n = 0;
  e_mm->add_option("--r", mm_r, "Parameter r (0 selects R)")->required()->check(CLI::Range(0u, 1000u));
  e_mm->add_option("--max-n", mm_max_n, "Largest n")->required()->check(CLI::Range(1u, 100000u));

  for (auto* sub : {seq, verify, v_theorem, v_lemma, v_identity, v_rec, v_step, explore, e_conj, e_mm}) {
    sub->fallthrough();
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return kAllPass;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageOrError;
  }

  const Output o{format == "json", quiet};
  backend.set_workers(workers);

  if (seq->parsed()) {
    if (!known_id(backend, "sequence", seq_name, err)) return kUsageOrError;
    if (seq_name == "Rg" && seq_r == 0) {
      err << "error: --name Rg needs --r\n";
      return kUsageOrError;
    }
    if (seq_n.has_value() == (seq_from.has_value() || seq_to.has_value())) {
      err << "error: give either --n or --from/--to\n";
      return kUsageOrError;
    }
    unsigned from = seq_n.value_or(seq_from.value_or(0));
    unsigned to = seq_n.value_or(seq_to.value_or(from));
    if (to < from) {
      err << "error: --to must be >= --from\n";
      return kUsageOrError;
    }
    const Reply reply = backend.sequence(seq_name, seq_r, from, to - from + 1);
    if (reply.status != 0) return backend_failure(reply, err);
    if (o.json_mode) {
      out << json(reply.items).dump() << '\n';
    } else {
      for (const auto& v : reply.items) out << v << '\n';
    }
    return kAllPass;
  }

  if (verify->parsed()) {
    CLI::App* chosen = verify->get_subcommands().front();
    vq.family = chosen->get_name();
    if (!known_id(backend, vq.family, vq.id, err)) return kUsageOrError;
    vq.bounds = v_bounds;
    if (!v_primes.empty()) {
      const auto sel = *parse_prime_selection(v_primes);
      if (sel.is_range) {
        vq.min_p = sel.lo;
        vq.max_n = sel.hi;
      } else {
        vq.primes = sel.list;
      }
    }
    if (vq.max_n == 0) vq.max_n = v_max_n.value_or(default_max_n(vq.family, vq.id));
    if (vq.family == "lemma" && vq.max_d != 0 && vq.id != "fourcases" && vq.id != "bober") {
      err << "error: --max-d applies to fourcases and bober only\n";
      return kUsageOrError;
    }
    const Reply reply = backend.verify(vq);
    if (reply.status != 0) return backend_failure(reply, err);
    return emit_reports(reply.items, o, out, err);
  }

  if (e_conj->parsed()) {
    if (!known_id(backend, "conjecture", sq.conjecture, err)) return kUsageOrError;
    if (sq.conjecture == "C3" && sq.r == 0) {
      err << "error: C3 needs --r\n";
      return kUsageOrError;
    }
    if (sq.conjecture != "C3" && sq.r != 0) {
      err << "error: --r applies to C3 only\n";
      return kUsageOrError;
    }
    if (sq.to < sq.from) {
      err << "error: --to must be >= --from\n";
      return kUsageOrError;
    }
    if (sq.output.empty()) sq.output = default_output(sq.conjecture, sq.r, sq.from, sq.to);
    const Reply reply = backend.explore(sq);
    if (reply.status != 0) return backend_failure(reply, err);
    if (!o.quiet) err << "records: " << sq.output << "\n";
    return emit_reports(reply.items, o, out, err);
  }

  if (e_mm->parsed()) {
    const Reply reply = backend.minimal_multiplier(mm_r, mm_max_n);
    if (reply.status != 0) return backend_failure(reply, err);
    const std::string value = reply.items.empty() ? "" : reply.items.front();
    if (o.json_mode) {
      out << json{{"r", mm_r}, {"max_n", mm_max_n}, {"multiplier", value}}.dump() << '\n';
    } else {
      out << value << '\n';
    }
    return kAllPass;
  }

  err << app.help();
  return kUsageOrError;
}

}  // namespace trisum::cli
