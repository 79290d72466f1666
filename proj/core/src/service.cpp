#include "climsim/service.hpp"

#include <httplib.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <nlohmann/json.hpp>
#include <regex>

#include "climsim/error.hpp"
#include "climsim/levers.hpp"
#include "climsim/run_io.hpp"
#include "climsim/scenario.hpp"
#include "climsim/text.hpp"

#ifndef CLIMSIM_VERSION
#define CLIMSIM_VERSION "0.0.0"
#endif

namespace climsim::service {

using ojson = nlohmann::ordered_json;

std::string to_string(JobStatus s) {
  switch (s) {
    case JobStatus::Queued: return "queued";
    case JobStatus::Running: return "running";
    case JobStatus::Done: return "done";
    case JobStatus::Failed: return "failed";
  }
  return "failed";
}

namespace {

Response json_response(int status, const ojson& doc) { return {status, doc.dump(), "application/json"}; }

Response error_response(int status, const std::string& kind, const std::string& message, ojson extra = {}) {
  ojson doc = {{"error", kind}, {"message", message}};
  if (extra.is_object()) {
    for (auto& [k, v] : extra.items()) doc[k] = v;
  }
  return json_response(status, doc);
}

ojson parse_body(const std::string& body) {
  try {
    auto doc = ojson::parse(body);
    if (!doc.is_object()) throw ValidationError("", "request body must be a JSON object");
    return doc;
  } catch (const ojson::parse_error& e) {
    throw ValidationError("", std::string("malformed JSON: ") + e.what());
  }
}

// A scenario given either inline or as {"preset": id}.
ScenarioSpec scenario_from(const ojson& j, const std::string& field, const std::filesystem::path& data_dir) {
  if (!j.is_object()) throw ValidationError(field, "'" + field + "' must be an object");
  if (j.size() == 1 && j.contains("preset")) {
    if (!j["preset"].is_string()) throw ValidationError(field + ".preset", "'preset' must be a string");
    try {
      return load_preset(j["preset"].get<std::string>(), data_dir);
    } catch (const LookupError& e) {
      throw ValidationError(field + ".preset", e.what());
    }
  }
  try {
    return parse_scenario(j.dump());
  } catch (const ValidationError& e) {
    throw ValidationError(e.field().empty() ? field : field + "." + e.field(), e.what());
  }
}

std::vector<std::string> outputs_from(const ojson& j) {
  if (!j.is_array()) throw ValidationError("outputs", "'outputs' must be an array of output ids");
  std::vector<std::string> ids;
  for (const auto& v : j) {
    if (!v.is_string()) throw ValidationError("outputs", "'outputs' entries must be strings");
    ids.push_back(v.get<std::string>());
  }
  for (const auto& id : ids) {
    const auto& cat = output_catalog();
    const bool known = std::any_of(cat.begin(), cat.end(), [&](const OutputInfo& o) { return o.id == id; });
    if (!known) throw ValidationError("outputs", "unknown output '" + id + "'");
  }
  return ids;
}

ojson run_json(const RunResult& r) { return ojson::parse(emit_run(r, OutputFormat::Json)); }

ojson snapshot_json(const JobSnapshot& s) {
  ojson doc;
  doc["id"] = s.id;
  doc["status"] = to_string(s.status);
  doc["progress"] = {{"evals", s.evals}, {"max_evals", s.max_evals}};
  doc["best"] = s.best ? ojson::parse(opt::metrics_to_json(*s.best)) : ojson(nullptr);
  if (s.status == JobStatus::Done) {
    ojson levers = ojson::object();
    for (const auto& [id, v] : s.levers) levers[id] = v;
    doc["levers"] = std::move(levers);
  }
  if (s.status == JobStatus::Failed) doc["error"] = s.error;
  return doc;
}

class SlotGuard {
 public:
  explicit SlotGuard(std::counting_semaphore<>& s) : s_(s) { s_.acquire(); }
  ~SlotGuard() { s_.release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  std::counting_semaphore<>& s_;
};

}  // namespace

Service::Service(ServiceOptions options) : Service(options, load_calibration(options.data_dir)) {}

Service::Service(ServiceOptions options, Calibration cal)
    : options_(std::move(options)),
      cal_(std::move(cal)),
      run_slots_(static_cast<std::ptrdiff_t>(std::max(1u, options_.max_concurrent_runs))) {
  const unsigned n = std::max(1u, options_.optimizer_workers);
  for (unsigned i = 0; i < n; ++i) workers_.emplace_back([this] { worker_loop(); });
}

Service::~Service() {
  {
    std::lock_guard lock(jobs_mutex_);
    stopping_ = true;
  }
  jobs_changed_.notify_all();
  for (auto& t : workers_) t.join();
}

template <typename F>
Response Service::guarded(F&& f) {
  try {
    return f();
  } catch (const ValidationError& e) {
    return error_response(400, "validation", e.what(), {{"field", e.field()}});
  } catch (const NumericFailure& e) {
    return error_response(500, "numeric_failure", e.what(), {{"subsystem", e.subsystem()}, {"year", e.year()}});
  } catch (const Error& e) {
    return error_response(500, "internal", e.what());
  }
}

Response Service::handle(const std::string& method, const std::string& path, const std::string& body) {
  static const std::regex job_path(R"(/api/v1/optimize/([^/]+))");
  std::smatch m;
  if (method == "GET" && path == "/api/v1/levers") return levers();
  if (method == "GET" && path == "/api/v1/health") return health();
  if (method == "POST" && path == "/api/v1/run") return run(body);
  if (method == "POST" && path == "/api/v1/compare") return compare(body);
  if (method == "POST" && path == "/api/v1/optimize") return submit_optimize(body);
  if (method == "GET" && std::regex_match(path, m, job_path)) return job(m[1].str());
  return error_response(404, "not_found", "no route for " + method + " " + path);
}

Response Service::levers() const { return {200, registry_to_json(LeverRegistry::instance()), "application/json"}; }

Response Service::health() const {
  return json_response(200, {{"status", "ok"},
                             {"version", CLIMSIM_VERSION},
                             {"calibration_version", cal_.version},
                             {"calibration_checksum", cal_.checksum}});
}

Response Service::run(const std::string& body) {
  return guarded([&] {
    const auto doc = parse_body(body);
    ScenarioSpec spec;
    std::optional<std::vector<std::string>> outputs;
    for (const auto& [key, value] : doc.items()) {
      if (key == "scenario") spec = scenario_from(value, key, options_.data_dir);
      else if (key == "outputs") outputs = outputs_from(value);
      else throw ValidationError(key, "unknown key '" + key + "'");
    }
    if (!doc.contains("scenario")) throw ValidationError("scenario", "'scenario' is required");
    RunResult r;
    {
      SlotGuard slot(run_slots_);
      r = run_simulation(spec, cal_);
    }
    if (outputs) r = r.project(*outputs);
    return Response{200, emit_run(r, OutputFormat::Json), "application/json"};
  });
}

Response Service::compare(const std::string& body) {
  return guarded([&] {
    const auto doc = parse_body(body);
    std::optional<ScenarioSpec> a;
    std::optional<ScenarioSpec> b;
    std::optional<std::vector<std::string>> outputs;
    for (const auto& [key, value] : doc.items()) {
      if (key == "a") a = scenario_from(value, key, options_.data_dir);
      else if (key == "b") b = scenario_from(value, key, options_.data_dir);
      else if (key == "outputs") outputs = outputs_from(value);
      else throw ValidationError(key, "unknown key '" + key + "'");
    }
    if (!a) throw ValidationError("a", "'a' is required");
    if (!b) throw ValidationError("b", "'b' is required");
    RunResult ra;
    RunResult rb;
    {
      SlotGuard slot(run_slots_);
      ra = run_simulation(*a, cal_);
      rb = run_simulation(*b, cal_);
    }
    const auto report = diff_runs(ra, rb);
    if (outputs) {
      ra = ra.project(*outputs);
      rb = rb.project(*outputs);
    }
    ojson out;
    out["a"] = run_json(ra);
    out["b"] = run_json(rb);
    out["diff"] = ojson::parse(diff_to_json(report, -1));
    return json_response(200, out);
  });
}

Response Service::submit_optimize(const std::string& body) {
  return guarded([&] {
    auto job = std::make_shared<Job>();
    job->request = opt::parse_optimize_request(body.empty() ? "{}" : body);
    std::string id;
    {
      std::lock_guard lock(jobs_mutex_);
      id = "job-" + std::to_string(next_id_++);
      job->state.id = id;
      job->state.max_evals = job->request.options.max_evals;
      jobs_[id] = job;
      order_.push_back(id);
      queue_.push_back(id);
      evict_locked();
    }
    jobs_changed_.notify_all();
    return json_response(202, {{"id", id}, {"status", "queued"}});
  });
}

Response Service::job(const std::string& id) const {
  const auto s = snapshot(id);
  if (!s) return error_response(404, "not_found", "unknown job '" + id + "'");
  return json_response(200, snapshot_json(*s));
}

std::optional<JobSnapshot> Service::snapshot(const std::string& id) const {
  std::lock_guard lock(jobs_mutex_);
  auto it = jobs_.find(id);
  if (it == jobs_.end()) return std::nullopt;
  return it->second->state;
}

bool Service::wait(const std::string& id, std::chrono::milliseconds timeout) const {
  std::unique_lock lock(jobs_mutex_);
  return jobs_changed_.wait_for(lock, timeout, [&] {
    auto it = jobs_.find(id);
    if (it == jobs_.end()) return true;
    const auto st = it->second->state.status;
    return st == JobStatus::Done || st == JobStatus::Failed;
  }) && jobs_.count(id) != 0;
}

void Service::evict_locked() {
  std::size_t live = jobs_.size();
  for (auto it = order_.begin(); live > options_.max_jobs && it != order_.end();) {
    const auto st = jobs_.at(*it)->state.status;
    if (st == JobStatus::Done || st == JobStatus::Failed) {
      jobs_.erase(*it);
      it = order_.erase(it);
      --live;
    } else {
      ++it;
    }
  }
}

void Service::worker_loop() {
  for (;;) {
    std::string id;
    {
      std::unique_lock lock(jobs_mutex_);
      jobs_changed_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
      if (stopping_) return;
      id = queue_.front();
      queue_.pop_front();
    }
    execute(id);
  }
}

void Service::execute(const std::string& id) {
  std::shared_ptr<Job> job;
  {
    std::lock_guard lock(jobs_mutex_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) return;
    job = it->second;
    job->state.status = JobStatus::Running;
  }
  jobs_changed_.notify_all();
  auto options = job->request.options;
  options.cancel = &stopping_;
  options.progress = [&](long evals, const opt::Metrics& best) {
    std::lock_guard lock(jobs_mutex_);
    job->state.evals = std::max(job->state.evals, evals);
    job->state.best = best;
  };
  JobSnapshot final_state;
  try {
    const auto result = opt::optimize(job->request.base, job->request.objective, options, cal_);
    std::lock_guard lock(jobs_mutex_);
    job->state.evals = static_cast<long>(result.log.size());
    job->state.best = result.best_metrics;
    for (std::size_t i = 0; i < result.lever_ids.size(); ++i) job->state.levers[result.lever_ids[i]] = result.best_values[i];
    job->state.status = JobStatus::Done;
  } catch (const std::exception& e) {
    std::lock_guard lock(jobs_mutex_);
    job->state.error = e.what();
    job->state.status = JobStatus::Failed;
  }
  jobs_changed_.notify_all();
}

int resolve_port(std::optional<int> flag, int fallback) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CLIMSIM_PORT"); env != nullptr && *env != '\0') {
    double v = 0.0;
    try {
      v = parse_number(env);
    } catch (const Error&) {
      throw ConfigError(std::string("CLIMSIM_PORT is not a number: ") + env);
    }
    if (v < 0 || v > 65535 || v != static_cast<int>(v)) throw ConfigError("CLIMSIM_PORT out of range");
    return static_cast<int>(v);
  }
  return fallback;
}

struct HttpServer::Impl {
  explicit Impl(Service& s) : service(s) {}
  Service& service;
  httplib::Server server;
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {
  auto& srv = impl_->server;
  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"}});
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    const auto r = impl_->service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  srv.Get(R"(/api/v1/.*)", forward);
  srv.Post(R"(/api/v1/.*)", forward);
  srv.Options(R"(/api/v1/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  auto& srv = impl_->server;
  if (port == 0) {
    const int p = srv.bind_to_any_port(host);
    if (p < 0) throw ConfigError("cannot bind " + host);
    return p;
  }
  if (!srv.bind_to_port(host, port)) throw ConfigError("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace climsim::service
