#include "gct/search.hpp"

#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace gct {

Deadline::Deadline(std::optional<double> seconds, std::atomic<bool>* cancel) : cancel_(cancel) {
  if (seconds) {
    active_ = true;
    end_ = std::chrono::steady_clock::now() +
           std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(*seconds));
  }
}

void Deadline::check() {
  if (cancel_ && cancel_->load(std::memory_order_relaxed)) throw BudgetExceeded("search cancelled");
  if (active_ && std::chrono::steady_clock::now() >= end_) {
    if (cancel_) cancel_->store(true);
    throw BudgetExceeded("time budget exhausted");
  }
}

namespace detail {

namespace {

std::string prefix_key(const Prefix& p) {
  if (p.empty()) return "root";
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(p[i]);
  }
  return s;
}

std::map<std::string, BigInt> load_checkpoint(const std::string& path, const std::string& query) {
  std::map<std::string, BigInt> done;
  std::ifstream in(path);
  if (!in) return done;
  std::string line;
  if (!std::getline(in, line) || line != "# query " + query) return done;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag, key, value;
    if (!(ls >> tag >> key >> value) || tag != "subtree") continue;
    done[key] = BigInt(value, 10);
  }
  return done;
}

}  // namespace

BigInt run_subtree_jobs(const std::vector<Prefix>& prefixes, const SearchOptions& opts, const std::string& query,
                        const std::function<BigInt(size_t, Deadline&)>& job) {
  std::vector<std::optional<BigInt>> results(prefixes.size());
  std::ofstream ckpt;
  if (!opts.checkpoint_path.empty()) {
    auto done = load_checkpoint(opts.checkpoint_path, query);
    for (size_t i = 0; i < prefixes.size(); ++i) {
      auto it = done.find(prefix_key(prefixes[i]));
      if (it != done.end()) results[i] = it->second;
    }
    ckpt.open(opts.checkpoint_path, std::ios::trunc);
    ckpt << "# query " << query << "\n";
    for (size_t i = 0; i < prefixes.size(); ++i) {
      if (results[i]) ckpt << "subtree " << prefix_key(prefixes[i]) << " " << results[i]->get_str() << "\n";
    }
    ckpt.flush();
  }

  std::atomic<bool> cancel{false};
  std::atomic<size_t> next{0};
  std::mutex mu;
  std::exception_ptr failure;

  auto worker = [&] {
    Deadline dl(opts.budget_seconds, &cancel);
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= prefixes.size()) return;
      if (results[i]) continue;
      try {
        BigInt v = job(i, dl);
        std::lock_guard<std::mutex> lock(mu);
        results[i] = v;
        if (ckpt.is_open()) {
          ckpt << "subtree " << prefix_key(prefixes[i]) << " " << v.get_str() << "\n";
          ckpt.flush();
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        cancel.store(true);
        return;
      }
    }
  };

  const int threads = std::max(1, opts.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  BigInt total = 0;
  for (const auto& r : results) total += *r;
  return total;
}

}  // namespace detail
}  // namespace gct

namespace gct {

std::string fingerprint(std::string_view text) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[i] = hex[h & 15];
  return s;
}

}  // namespace gct
