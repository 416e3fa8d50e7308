#include "causal/commands.hpp"

#include "causal/error.hpp"
#include "causal/generators.hpp"

#include <boost/algorithm/string.hpp>

#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

namespace causal {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

CoverSpec parse_cover(const std::string& text) {
  if (text == "exact") return {CoverSpec::Mode::exact, {}};
  if (text == "greedy") return {CoverSpec::Mode::greedy, {}};
  CoverSpec spec{CoverSpec::Mode::given, {}};
  std::vector<std::string> parts;
  boost::split(parts, text, boost::is_any_of(","));
  for (auto& part : parts) {
    boost::trim(part);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(Errc::ParseError, "cover must be \"exact\", \"greedy\" or a list like 0,1");
    }
    spec.members.push_back(static_cast<ProcessId>(std::stoul(part)));
  }
  return spec;
}

std::string event_name(EventId e) { return "p" + std::to_string(e.proc) + "#" + std::to_string(e.index); }

Json event_json(EventId e) { return Json{{"proc", e.proc}, {"index", e.index}}; }

std::string query_line(const QueryRecord& q) {
  std::ostringstream out;
  out << "Q@" << q.query.at.get_str() << "(" << event_name({q.query.proc, q.query.index}) << ") = ";
  switch (q.status) {
    case QueryRecord::Status::ready: out << format(*q.answer); break;
    case QueryRecord::Status::blocked:
      out << "blocked on cover positions [";
      for (std::size_t i = 0; i < q.missing.size(); ++i) out << (i ? "," : "") << q.missing[i];
      out << "]";
      if (q.unblocked_at && q.answer) out << ", unblocks at " << q.unblocked_at->get_str() << " as " << format(*q.answer);
      break;
    case QueryRecord::Status::error: out << "error " << q.error; break;
  }
  return out.str();
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::FileNotFound, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace

RunReport cmd_run(const RunOptions& options) {
  const auto start = Clock::now();
  auto script = load_scenario(options.scenario);
  if (options.cover) script.cover = parse_cover(*options.cover);

  RunResult result;
  RunReport report;
  if (options.check_oracle) {
    report.check = check_run(script, options.algo, &result);
  } else {
    result = run(script, options.algo);
  }
  report.scenario_id = result.scenario_id;
  report.algorithm = result.algorithm;
  if (result.cover) report.cover = result.cover->members();
  report.events = result.trace.total_events();
  for (const auto& q : result.queries) {
    switch (q.status) {
      case QueryRecord::Status::ready: ++report.queries_ready; break;
      case QueryRecord::Status::blocked: ++report.queries_blocked; break;
      case QueryRecord::Status::error: ++report.query_errors; break;
    }
    report.query_lines.push_back(query_line(q));
  }
  if (options.out) write_json(*options.out, to_json(result));
  report.seconds = since(start);
  return report;
}

FuzzReport cmd_fuzz(const FuzzOptions& options) {
  if (options.n < 1 || options.n > kFuzzMaxProcesses) {
    throw Error(Errc::InvalidArgument, "--n must be in 1.." + std::to_string(kFuzzMaxProcesses));
  }
  if (options.algo == Algorithm::star && options.n < 3) {
    throw Error(Errc::InvalidArgument, "the star algorithm needs --n >= 3");
  }
  const auto start = Clock::now();
  FuzzReport report;
  report.options = options;

  std::vector<CheckReport> per_iter(options.iters);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < options.iters; i += stride) {
      RandomScenarioOptions gen;
      gen.processes = options.n;
      gen.max_events = options.events;
      gen.edge_probability = options.edge_probability;
      gen.max_delay = options.max_delay;
      gen.star = options.algo == Algorithm::star;
      gen.cover.mode = options.cover;
      gen.seed = options.seed + i;
      per_iter[i] = check_run(random_scenario(gen), options.algo);
    }
  };
  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(work, t, jobs);
  }
  for (std::size_t i = 0; i < per_iter.size(); ++i) {
    if (!per_iter[i].clean()) report.failing_seeds.push_back(options.seed + i);
    report.check.merge(per_iter[i]);
  }
  report.seconds = since(start);
  return report;
}

AdversaryReport cmd_adversary(std::size_t n, std::string_view candidate) {
  auto stamper = make_timestamper(candidate);
  return adversary_lemma1(*stamper, n);
}

Json to_json(const CheckReport& r) {
  Json out;
  out["runs"] = r.runs;
  out["events"] = r.events;
  out["comparisons"] = r.comparisons;
  out["cases"] = r.cases;
  out["samples"] = r.samples;
  out["ready_answers"] = r.ready_answers;
  out["blocked_answers"] = r.blocked_answers;
  out["size_violations"] = r.size_violations;
  out["mutation_violations"] = r.mutation_violations;
  out["distinctness_violations"] = r.distinctness_violations;
  out["disagreement_count"] = r.disagreement_count;
  Json list = Json::array();
  for (const auto& d : r.disagreements) {
    Json rec{{"first", event_json(d.first)}, {"second", event_json(d.second)}};
    rec["at"] = d.at ? rational_json(*d.at) : Json(nullptr);
    rec["claimed"] = d.claimed;
    rec["actual"] = d.actual;
    if (d.comparison_case) rec["case"] = d.comparison_case;
    list.push_back(std::move(rec));
  }
  out["disagreements"] = std::move(list);
  return out;
}

Json to_json(const RunReport& r, bool timing) {
  Json out;
  out["scenario"] = r.scenario_id;
  out["algorithm"] = r.algorithm;
  if (r.cover) {
    out["cover"] = {{"members", *r.cover}, {"size", r.cover->size()}};
  } else {
    out["cover"] = nullptr;
  }
  out["events"] = r.events;
  out["queries"] = {{"ready", r.queries_ready}, {"blocked", r.queries_blocked}, {"errors", r.query_errors}};
  out["query_log"] = r.query_lines;
  out["oracle"] = r.check ? to_json(*r.check) : Json(nullptr);
  if (timing) out["seconds"] = r.seconds;
  return out;
}

Json to_json(const FuzzReport& r, bool timing) {
  Json out;
  out["n"] = r.options.n;
  out["events"] = r.options.events;
  out["iters"] = r.options.iters;
  out["seed"] = r.options.seed;
  out["algorithm"] = to_string(r.options.algo);
  out["check"] = to_json(r.check);
  out["failing_seeds"] = r.failing_seeds;
  if (timing) out["seconds"] = r.seconds;
  return out;
}

Json to_json(const AdversaryReport& r) {
  Json out;
  out["candidate"] = r.candidate;
  out["n"] = r.n;
  out["length"] = r.length;
  out["dominating"] = r.dominating;
  out["last_sender"] = r.last_sender;
  if (const auto* v = std::get_if<Violation>(&r.outcome)) {
    out["violation"] = {{"kind", to_string(v->kind)},
                        {"first", event_json(v->first)},
                        {"second", event_json(v->second)},
                        {"first_timestamp", to_json(v->first_timestamp)},
                        {"second_timestamp", to_json(v->second_timestamp)},
                        {"first_before_second", v->first_before_second},
                        {"second_before_first", v->second_before_first}};
  } else {
    out["violation"] = nullptr;
  }
  out["trace"] = to_json(r.trace);
  return out;
}

std::string summary(const RunReport& r, bool timing) {
  std::ostringstream out;
  out << "scenario " << r.scenario_id << " algorithm " << r.algorithm << '\n';
  if (r.cover) {
    out << "cover {";
    for (std::size_t i = 0; i < r.cover->size(); ++i) out << (i ? "," : "") << "p" << (*r.cover)[i];
    out << "} c=" << r.cover->size() << '\n';
  }
  out << "events " << r.events << ", queries ready " << r.queries_ready << ", blocked " << r.queries_blocked
      << ", errors " << r.query_errors << '\n';
  for (const auto& line : r.query_lines) out << "  " << line << '\n';
  if (r.check) {
    out << "oracle comparisons " << r.check->comparisons << ", disagreements " << r.check->disagreement_count
        << ", size violations " << r.check->size_violations << ", mutations " << r.check->mutation_violations
        << '\n';
    for (const auto& d : r.check->disagreements) {
      out << "  DISAGREE " << event_name(d.first) << " vs " << event_name(d.second) << ": timestamps say "
          << (d.claimed ? "before" : "not before") << ", oracle says " << (d.actual ? "before" : "not before") << '\n';
    }
  }
  if (timing) out << "time " << r.seconds << " s\n";
  return out.str();
}

std::string summary(const FuzzReport& r, bool timing) {
  std::ostringstream out;
  const auto& c = r.check;
  out << "fuzz " << to_string(r.options.algo) << " n=" << r.options.n << " events<=" << r.options.events
      << " iters=" << r.options.iters << " seed=" << r.options.seed << '\n';
  out << "runs " << c.runs << ", events " << c.events << ", comparisons " << c.comparisons << '\n';
  if (r.options.algo == Algorithm::inline_ts) {
    out << "cases (i) " << c.cases[0] << " (ii) " << c.cases[1] << " (iii) " << c.cases[2] << " (iv) " << c.cases[3]
        << "; ready " << c.ready_answers << ", blocked " << c.blocked_answers << '\n';
  }
  out << "disagreements " << c.disagreement_count << ", size violations " << c.size_violations << ", mutations "
      << c.mutation_violations << ", duplicates " << c.distinctness_violations << '\n';
  if (!r.failing_seeds.empty()) {
    out << "failing seeds:";
    for (auto s : r.failing_seeds) out << ' ' << s;
    out << '\n';
  }
  if (timing) out << "time " << r.seconds << " s\n";
  return out.str();
}

std::string summary(const AdversaryReport& r) {
  std::ostringstream out;
  out << "candidate " << r.candidate << " (length " << r.length << ") on star(" << r.n << ")\n";
  out << "coordinate maxima held by {";
  for (std::size_t i = 0; i < r.dominating.size(); ++i) out << (i ? "," : "") << "p" << r.dominating[i];
  out << "}; p" << r.last_sender << " delivered last\n";
  if (const auto* v = std::get_if<Violation>(&r.outcome)) {
    out << "VIOLATION " << to_string(v->kind) << ": " << event_name(v->first) << " " << format(v->first_timestamp)
        << " vs " << event_name(v->second) << " " << format(v->second_timestamp) << '\n';
    out << "  oracle: " << event_name(v->first) << " -> " << event_name(v->second) << " "
        << (v->first_before_second ? "yes" : "no") << ", " << event_name(v->second) << " -> "
        << event_name(v->first) << " " << (v->second_before_first ? "yes" : "no") << '\n';
  } else {
    out << "no violation found\n";
  }
  return out.str();
}

int exit_code(const RunReport& r) {
  return r.check && !r.check->clean() ? 1 : 0;
}

int exit_code(const FuzzReport& r) { return r.check.clean() ? 0 : 1; }

int exit_code(const AdversaryReport& r) { return std::holds_alternative<Violation>(r.outcome) ? 0 : 1; }

}  // namespace causal
