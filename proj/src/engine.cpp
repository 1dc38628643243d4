#include "mvbandit/engine.hpp"

#include <stdexcept>
#include <thread>

#include "mvbandit/policy_driver.hpp"

namespace mvbandit {

void parallel_for(std::uint64_t n, unsigned jobs,
                  const std::function<void(std::uint64_t, std::uint64_t)>& body) {
  if (n == 0) {
    return;
  }
  unsigned workers = jobs == 0 ? std::thread::hardware_concurrency() : jobs;
  if (workers == 0) {
    workers = 1;
  }
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n));
  if (workers == 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = n * w / workers;
    const std::uint64_t hi = n * (w + 1) / workers;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& t : pool) {
    t.join();
  }
}

ReplicationStats run_replications(const BanditInstance& instance, const PolicySpec& policy,
                                  std::uint64_t horizon, std::uint64_t replications,
                                  const RandomStream& stream, unsigned jobs) {
  if (replications == 0) {
    throw std::invalid_argument("replications must be >= 1");
  }
  detail::validate_policy_run(instance, policy, horizon);

  const std::size_t num_arms = instance.num_arms();
  ReplicationStats out;
  out.replications = replications;
  out.num_arms = num_arms;
  out.horizon = horizon;
  out.path_m2.resize(replications);
  out.path_sum.resize(replications);
  out.pulls.resize(replications * num_arms);
  out.arm_mean.resize(replications * num_arms);

  parallel_for(replications, jobs, [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<StreamingMoments> arm_stats;
    for (std::uint64_t r = lo; r < hi; ++r) {
      StreamingMoments path;
      double sum = 0.0;
      detail::drive_policy(instance, policy, horizon, stream.child(r), arm_stats,
                           [&](std::uint64_t, std::size_t, double x) {
                             path.add(x);
                             sum += x;
                           });
      out.path_m2[r] = path.second_moment_sum();
      out.path_sum[r] = sum;
      for (std::size_t i = 0; i < num_arms; ++i) {
        out.pulls[r * num_arms + i] = arm_stats[i].count();
        out.arm_mean[r * num_arms + i] = arm_stats[i].count() > 0 ? arm_stats[i].mean() : 0.0;
      }
    }
  });
  return out;
}

}  // namespace mvbandit
