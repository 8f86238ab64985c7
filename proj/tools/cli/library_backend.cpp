#include <trisum/trisum.h>

#include "dispatch.hpp"

namespace trisum::cli {

namespace {

class LibraryBackend final : public Backend {
 public:
  LibraryBackend() {
    if (trisum_context_create(&ctx_) != TRISUM_OK) throw std::bad_alloc();
  }
  ~LibraryBackend() override { trisum_context_destroy(ctx_); }
  LibraryBackend(const LibraryBackend&) = delete;
  LibraryBackend& operator=(const LibraryBackend&) = delete;

  void set_workers(unsigned workers) override { trisum_context_set_workers(ctx_, workers); }

  std::string valid_ids(const std::string& family) override {
    const char* ids = trisum_valid_ids(family.c_str());
    return ids != nullptr ? ids : "";
  }

  Reply sequence(const std::string& name, unsigned r, unsigned from, unsigned count) override {
    trisum_result* res = nullptr;
    const trisum_status status = trisum_sequence(ctx_, name.c_str(), r, from, count, &res);
    return collect(status, res);
  }

  Reply verify(const VerifyRequest& q) override {
    trisum_check_args args;
    trisum_check_args_init(&args);
    args.max_n = q.max_n;
    args.min_p = q.min_p;
    args.primes = q.primes.data();
    args.prime_count = q.primes.size();
    args.bounds = q.bounds.data();
    args.bound_count = q.bounds.size();
    args.max_d = q.max_d;
    args.trials = q.trials;
    args.seed = q.seed;
    trisum_result* res = nullptr;
    const trisum_status status = trisum_verify(ctx_, q.family.c_str(), q.id.c_str(), &args, &res);
    return collect(status, res);
  }

  Reply explore(const SweepRequest& q) override {
    trisum_sweep_args args{};
    args.conjecture = q.conjecture.c_str();
    args.r = q.r;
    args.from = q.from;
    args.to = q.to;
    args.output = q.output.c_str();
    args.checkpoint = q.checkpoint.empty() ? nullptr : q.checkpoint.c_str();
    args.resume = q.resume ? 1 : 0;
    trisum_result* res = nullptr;
    const trisum_status status = trisum_explore_conjecture(ctx_, &args, &res);
    return collect(status, res);
  }

  Reply minimal_multiplier(unsigned r, unsigned max_n) override {
    trisum_result* res = nullptr;
    const trisum_status status = trisum_minimal_multiplier(ctx_, r, max_n, &res);
    return collect(status, res);
  }

 private:
  Reply collect(trisum_status status, trisum_result* res) {
    Reply reply;
    reply.status = status;
    if (status != TRISUM_OK) {
      reply.error = trisum_last_error(ctx_);
      if (reply.error.empty()) reply.error = trisum_status_name(status);
    }
    for (std::size_t i = 0; i < trisum_result_size(res); ++i) {
      reply.items.emplace_back(trisum_result_item(res, i));
    }
    trisum_result_destroy(res);
    return reply;
  }

  trisum_context* ctx_ = nullptr;
};

}  // namespace

std::unique_ptr<Backend> make_library_backend() { return std::make_unique<LibraryBackend>(); }

}  // namespace trisum::cli
