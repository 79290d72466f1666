#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <thread>
#include <vector>

#include "climsim/calibration.hpp"
#include "climsim/optimizer.hpp"

namespace climsim::service {

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

enum class JobStatus { Queued, Running, Done, Failed };
std::string to_string(JobStatus s);

/// Consistent copy of one optimizer job.
struct JobSnapshot {
  std::string id;
  JobStatus status = JobStatus::Queued;
  long evals = 0;
  long max_evals = 0;
  std::optional<opt::Metrics> best;
  std::map<std::string, double> levers;  // final bounded levers, done only
  std::string error;                     // failed only
};

struct ServiceOptions {
  std::filesystem::path data_dir = default_data_dir();
  unsigned max_concurrent_runs = 2;
  unsigned optimizer_workers = 1;
  std::size_t max_jobs = 256;  // terminal jobs beyond this are evicted oldest first
};

/// Request handling for /api/v1, independent of the HTTP transport. Run and
/// compare requests share a bounded slot pool; optimizer jobs run on a fixed
/// worker pool and are kept in memory for the life of the object.
class Service {
 public:
  explicit Service(ServiceOptions options = {});
  Service(ServiceOptions options, Calibration cal);
  ~Service();  // cancels queued and running jobs
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  Response handle(const std::string& method, const std::string& path, const std::string& body);

  Response levers() const;
  Response health() const;
  Response run(const std::string& body);
  Response compare(const std::string& body);
  Response submit_optimize(const std::string& body);
  Response job(const std::string& id) const;

  std::optional<JobSnapshot> snapshot(const std::string& id) const;
  /// Blocks until the job is terminal; false on timeout or unknown id.
  bool wait(const std::string& id, std::chrono::milliseconds timeout) const;

 private:
  struct Job {
    JobSnapshot state;
    opt::OptimizeRequest request;
  };

  void worker_loop();
  void execute(const std::string& id);
  void evict_locked();
  template <typename F>
  Response guarded(F&& f);

  ServiceOptions options_;
  Calibration cal_;
  std::counting_semaphore<> run_slots_;

  mutable std::mutex jobs_mutex_;
  mutable std::condition_variable jobs_changed_;
  std::map<std::string, std::shared_ptr<Job>> jobs_;
  std::deque<std::string> order_;  // submission order, for eviction
  std::deque<std::string> queue_;
  std::uint64_t next_id_ = 1;
  std::atomic<bool> stopping_{false};
  std::vector<std::thread> workers_;
};

/// Port from --port when given, else $CLIMSIM_PORT, else fallback.
int resolve_port(std::optional<int> flag, int fallback = 8080);

/// HTTP/1.1 binding with CORS for every origin.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();
  /// Binds and returns the bound port; port 0 picks a free one.
  int bind(const std::string& host, int port);
  /// Serves until stop(); requires a prior bind.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace climsim::service
