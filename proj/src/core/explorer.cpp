#include "explorer.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"
#include "parallel.hpp"

namespace trisum {

namespace {

std::string now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[48];
  std::snprintf(out, sizeof out, "%s.%03lldZ", buf, static_cast<long long>(ms));
  return out;
}

std::string value_string(const ExactRational& q) {
  return q.get_den() == 1 ? to_string(q.get_num()) : to_string(q);
}

/// sum - target reduced mod `modulus`.
ConjectureVerdict residue_verdict(const ExactRational& sum, const BigInt& target,
                                  const BigInt& modulus) {
  ConjectureVerdict v;
  v.sum = value_string(sum);
  v.modulus = to_string(modulus);
  if (sum.get_den() != 1) {
    v.remainder = "non-integral";
    return v;
  }
  BigInt rem;
  const BigInt diff = sum.get_num() - target;
  mpz_fdiv_r(rem.get_mpz_t(), diff.get_mpz_t(), modulus.get_mpz_t());
  v.remainder = to_string(rem);
  v.holds = rem == 0;
  return v;
}

ConjectureVerdict refinement(const ExactRational& sum, unsigned n, unsigned factor) {
  const BigInt nn = n;
  return residue_verdict(sum, nn * nn, factor * nn);
}

const std::vector<ExactRational> prefix_for(const ConjectureSpec& spec, unsigned to, unsigned r,
                                            unsigned workers) {
  return weighted_square_prefix(spec.sequence(r), to, workers);
}

SweepRecord make_record(const ConjectureSpec& spec, unsigned n, unsigned r,
                        const ExactRational& square_sum) {
  SweepRecord rec;
  rec.check = spec.name;
  rec.n = n;
  if (spec.takes_r) rec.r = r;
  rec.witness = spec.test(square_sum, n, r);
  rec.pass = rec.witness.holds;
  rec.ts = now_iso8601();
  return rec;
}

nlohmann::json canonical_config(const SweepConfig& c) {
  nlohmann::json j = {{"check", c.conjecture.name}, {"from", c.from}, {"to", c.to}};
  j["r"] = c.conjecture.takes_r ? nlohmann::json(c.r) : nlohmann::json(nullptr);
  return j;
}

void write_checkpoint(const std::filesystem::path& path, const SweepConfig& config,
                      const std::string& fingerprint, const std::set<unsigned>& done) {
  unsigned frontier = config.from;
  while (done.count(frontier) != 0) ++frontier;
  const nlohmann::json j = {{"fingerprint", fingerprint},
                            {"config", canonical_config(config)},
                            {"completed", done.size()},
                            // every n below this is on file
                            {"frontier", frontier}};
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IoError("cannot write checkpoint " + tmp.string());
    out << j.dump() << '\n';
    out.flush();
    if (!out) throw IoError("cannot write checkpoint " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot replace checkpoint " + path.string() + ": " + ec.message());
}

/// Drops a trailing partial line left by an interrupted write.
void truncate_torn_tail(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return;
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();
  if (text.empty() || text.back() == '\n') return;
  const auto last = text.find_last_of('\n');
  std::filesystem::resize_file(path, last == std::string::npos ? 0 : last + 1);
}

}  // namespace

ConjectureSpec builtin_conjecture(ConjectureId id) {
  switch (id) {
    case ConjectureId::C1:
      return {"C1", false, [](unsigned) { return SequenceId::R(); },
              [](const ExactRational& s, unsigned n, unsigned) { return refinement(s, n, 16); }};
    case ConjectureId::C2:
      return {"C2", false, [](unsigned) { return SequenceId::W(); },
              [](const ExactRational& s, unsigned n, unsigned) { return refinement(s, n, 8); }};
    case ConjectureId::C3:
      return {"C3", true, [](unsigned r) { return SequenceId::RGeneral(r); },
              [](const ExactRational& s, unsigned n, unsigned r) {
                const BigInt a = double_factorial_odd(r);
                return residue_verdict(ExactRational(a * a * s), BigInt(0), BigInt(n));
              }};
  }
  throw std::invalid_argument("unknown conjecture");
}

ConjectureId parse_conjecture_id(std::string_view name) {
  if (name == "C1") return ConjectureId::C1;
  if (name == "C2") return ConjectureId::C2;
  if (name == "C3") return ConjectureId::C3;
  throw std::invalid_argument("unknown conjecture '" + std::string(name) + "' (valid: C1 C2 C3)");
}

nlohmann::json SweepRecord::to_json() const {
  return {{"check", check},
          {"n", n},
          {"r", r ? nlohmann::json(*r) : nlohmann::json(nullptr)},
          {"status", pass ? "pass" : "fail"},
          {"witness",
           {{"sum", witness.sum}, {"modulus", witness.modulus}, {"remainder", witness.remainder}}},
          {"ts", ts}};
}

SweepRecord SweepRecord::from_json(const nlohmann::json& j) {
  SweepRecord rec;
  rec.check = j.at("check").get<std::string>();
  rec.n = j.at("n").get<unsigned>();
  if (!j.at("r").is_null()) rec.r = j.at("r").get<unsigned>();
  const auto status = j.at("status").get<std::string>();
  if (status != "pass" && status != "fail") throw std::invalid_argument("bad status " + status);
  rec.pass = status == "pass";
  const auto& w = j.at("witness");
  rec.witness = {rec.pass, w.at("sum").get<std::string>(), w.at("modulus").get<std::string>(),
                 w.at("remainder").get<std::string>()};
  rec.ts = j.at("ts").get<std::string>();
  return rec;
}

std::tuple<std::string, unsigned, long> SweepRecord::key() const {
  return {check, n, r ? static_cast<long>(*r) : -1L};
}

std::vector<SweepRecord> explore(const ConjectureSpec& spec, unsigned from, unsigned to,
                                 unsigned r, unsigned workers) {
  if (from == 0 || to < from) throw std::invalid_argument("explore: need 1 <= from <= to");
  if (spec.takes_r && r == 0) throw std::invalid_argument(spec.name + ": r must be >= 1");
  const auto sums = prefix_for(spec, to, r, workers);
  std::vector<SweepRecord> out(to - from + 1);
  parallel_for(out.size(), workers, [&](std::size_t i) {
    const unsigned n = from + static_cast<unsigned>(i);
    out[i] = make_record(spec, n, r, sums[n]);
  });
  return out;
}

BigInt minimal_multiplier(unsigned r, unsigned max_n, unsigned workers) {
  if (max_n == 0) throw std::invalid_argument("minimal_multiplier: max_n must be >= 1");
  const SequenceId id = r == 0 ? SequenceId::R() : SequenceId::RGeneral(r);
  const auto sums = weighted_square_prefix(id, max_n, workers);
  BigInt a = 1;
  BigInt nv, g, need;
  for (unsigned n = 1; n <= max_n; ++n) {
    // a * u/v in nZ  <=>  (n v / gcd(u, n v)) | a
    nv = sums[n].get_den() * n;
    mpz_gcd(g.get_mpz_t(), sums[n].get_num_mpz_t(), nv.get_mpz_t());
    mpz_divexact(need.get_mpz_t(), nv.get_mpz_t(), g.get_mpz_t());
    mpz_lcm(a.get_mpz_t(), a.get_mpz_t(), need.get_mpz_t());
  }
  return a;
}

std::string config_fingerprint(const SweepConfig& config) {
  const std::string text = canonical_config(config).dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream hex;
  for (unsigned i = 0; i < len; ++i) {
    static const char* digits = "0123456789abcdef";
    hex << digits[digest[i] >> 4] << digits[digest[i] & 15];
  }
  return hex.str();
}

std::vector<SweepRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<SweepRecord> out;
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string::npos) break;  // partial trailing line
    ++line_no;
    const std::string_view line(text.data() + start, end - start);
    start = end + 1;
    if (line.empty()) continue;
    try {
      out.push_back(SweepRecord::from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

SweepResult run_sweep(SweepConfig config) {
  const ConjectureSpec& spec = config.conjecture;
  if (config.from == 0 || config.to < config.from) {
    throw std::invalid_argument("sweep range must satisfy 1 <= from <= to");
  }
  if (spec.takes_r && config.r == 0) throw std::invalid_argument(spec.name + ": r must be >= 1");
  if (config.output.empty()) throw std::invalid_argument("sweep needs an output path");
  if (config.checkpoint.empty()) {
    config.checkpoint = config.output;
    config.checkpoint += ".ckpt";
  }
  if (config.batch == 0) config.batch = 1;
  const std::string fingerprint = config_fingerprint(config);
  const std::optional<unsigned> record_r =
      spec.takes_r ? std::optional<unsigned>(config.r) : std::nullopt;

  std::vector<SweepRecord> on_file;
  std::set<unsigned> done;
  if (config.resume && std::filesystem::exists(config.output)) {
    if (!std::filesystem::exists(config.checkpoint)) {
      throw CheckpointMismatch("no checkpoint at " + config.checkpoint.string() +
                               " to resume " + config.output.string());
    }
    std::ifstream in(config.checkpoint);
    nlohmann::json ckpt;
    try {
      ckpt = nlohmann::json::parse(in);
    } catch (const std::exception& e) {
      throw CheckpointMismatch("unreadable checkpoint " + config.checkpoint.string() + ": " + e.what());
    }
    if (ckpt.value("fingerprint", std::string()) != fingerprint) {
      throw CheckpointMismatch("checkpoint " + config.checkpoint.string() +
                               " was written for a different sweep configuration");
    }
    truncate_torn_tail(config.output);
    for (auto& rec : read_records(config.output)) {
      if (rec.check != spec.name || rec.r != record_r || rec.n < config.from || rec.n > config.to) {
        continue;
      }
      if (!done.insert(rec.n).second) continue;  // keep the first copy of a key
      on_file.push_back(std::move(rec));
    }
  } else {
    std::ofstream truncate(config.output, std::ios::trunc);
    if (!truncate) throw IoError("cannot write " + config.output.string());
  }
  write_checkpoint(config.checkpoint, config, fingerprint, done);

  std::vector<unsigned> pending;
  for (unsigned n = config.from; n <= config.to; ++n) {
    if (done.count(n) == 0) pending.push_back(n);
  }

  SweepResult result;
  std::vector<SweepRecord> fresh;
  if (!pending.empty()) {
    const auto sums = prefix_for(spec, config.to, config.r, config.workers);
    std::ofstream out(config.output, std::ios::app);
    if (!out) throw IoError("cannot append to " + config.output.string());
    for (std::size_t begin = 0; begin < pending.size(); begin += config.batch) {
      const std::size_t end = std::min(pending.size(), begin + config.batch);
      std::vector<SweepRecord> batch(end - begin);
      parallel_for(batch.size(), config.workers, [&](std::size_t i) {
        batch[i] = make_record(spec, pending[begin + i], config.r, sums[pending[begin + i]]);
      });
      bool stop = false;
      for (auto& rec : batch) {
        if (config.stop_after && fresh.size() >= *config.stop_after) {
          stop = true;
          break;
        }
        out << rec.to_json().dump() << '\n';
        done.insert(rec.n);
        fresh.push_back(std::move(rec));
      }
      out.flush();
      if (!out) throw IoError("write failed on " + config.output.string());
      if (stop) break;
      write_checkpoint(config.checkpoint, config, fingerprint, done);
    }
  }

  result.new_records = fresh.size();
  for (auto& rec : fresh) on_file.push_back(std::move(rec));
  result.total_records = on_file.size();
  result.complete = done.size() == static_cast<std::size_t>(config.to - config.from + 1);
  std::sort(on_file.begin(), on_file.end(),
            [](const SweepRecord& a, const SweepRecord& b) { return a.n < b.n; });
  for (const auto& rec : on_file) {
    if (!rec.pass) result.failures.push_back(rec);
  }

  std::vector<std::pair<std::string, long long>> params = {{"from", config.from}, {"to", config.to}};
  if (spec.takes_r) params.emplace_back("r", config.r);
  Witness w;
  w.extra = {{"records", std::to_string(result.total_records)},
             {"new_records", std::to_string(result.new_records)},
             {"failures", std::to_string(result.failures.size())}};
  if (!result.complete) {
    result.summary = CheckReport::error(spec.name, std::move(params), "sweep stopped before completion");
    result.summary.witness = std::move(w);
  } else if (result.failures.empty()) {
    result.summary = CheckReport::pass(spec.name, std::move(params), std::move(w));
  } else {
    const auto& first = result.failures.front();
    std::string listed;
    for (std::size_t i = 0; i < result.failures.size() && i < 20; ++i) {
      listed += (i ? "," : "") + std::to_string(result.failures[i].n);
    }
    w.lhs = first.witness.sum;
    w.rhs = first.witness.modulus;
    w.extra.emplace_back("remainder", first.witness.remainder);
    w.extra.emplace_back("failing_n", listed);
    result.summary = CheckReport::fail(spec.name, std::move(params), std::move(w),
                                       "counterexample at n=" + std::to_string(first.n));
  }
  return result;
}

}  // namespace trisum
