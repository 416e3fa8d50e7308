#include "causal/serialize.hpp"

#include "causal/error.hpp"

#include <fstream>
#include <sstream>

namespace causal {

Json rational_json(const Rational& x) {
  if (is_integer(x) && x.get_num().fits_slong_p()) return x.get_num().get_si();
  if (is_integer(x)) return x.get_num().get_str();
  return to_fraction_string(x);
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Rational(std::to_string(j.get<std::uint64_t>()))
                                  : Rational(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(Errc::ParseError, "expected an integer or \"num/den\" string, got " + j.dump());
}

Json to_json(const VectorTimestamp& ts) {
  Json out = Json::array();
  for (const auto& x : ts.elems()) out.push_back(rational_json(x));
  return out;
}

namespace {

Json slot_json(const NextSlot& s) {
  switch (s.state) {
    case NextSlot::State::infinite: return "inf";
    case NextSlot::State::pending: return "pending";
    case NextSlot::State::finite: return s.index;
  }
  return nullptr;
}

std::string slot_text(const NextSlot& s) {
  switch (s.state) {
    case NextSlot::State::infinite: return "inf";
    case NextSlot::State::pending: return "?";
    case NextSlot::State::finite: return std::to_string(s.index);
  }
  return "";
}

}  // namespace

Json to_json(const InlineTimestamp& ts) {
  Json out;
  if (ts.in_cover()) {
    out["id"] = nullptr;
    out["index"] = nullptr;
    out["vect"] = to_json(ts.vect);
    out["next"] = nullptr;
    return out;
  }
  out["id"] = ts.outside->id;
  out["index"] = ts.outside->index;
  out["vect"] = to_json(ts.vect);
  Json next = Json::array();
  for (std::size_t i = 0; i < ts.vect.size(); ++i) next.push_back(slot_json(ts.next_at(i)));
  out["next"] = std::move(next);
  if (!ts.outside->next_positions.empty()) out["next_positions"] = ts.outside->next_positions;
  return out;
}

Json to_json(const AnyTimestamp& ts) {
  return std::visit([](const auto& t) { return to_json(t); }, ts);
}

Json to_json(const ControlMessage& cm) {
  return Json{{"from", cm.from}, {"to", cm.to}, {"send_index", cm.send_index}, {"recv_index", cm.recv_index}};
}

Json to_json(const ExecutionTrace& trace) {
  Json out;
  out["processes"] = trace.process_count();
  Json edges = Json::array();
  for (const auto& e : trace.graph().edges()) edges.push_back({e.a, e.b});
  out["edges"] = std::move(edges);
  Json events = Json::array();
  for (ProcessId p = 0; p < trace.process_count(); ++p) {
    Json list = Json::array();
    for (const auto& e : trace.events(p)) {
      Json ev;
      ev["proc"] = e.id.proc;
      ev["index"] = e.id.index;
      if (const auto* s = std::get_if<Send>(&e.kind)) {
        ev["kind"] = "send";
        ev["at"] = to_fraction_string(e.at);
        ev["msg"] = s->msg;
        ev["to"] = s->to;
      } else if (const auto* r = std::get_if<Receive>(&e.kind)) {
        ev["kind"] = "receive";
        ev["at"] = to_fraction_string(e.at);
        ev["msg"] = r->msg;
      } else {
        ev["kind"] = "compute";
        ev["at"] = to_fraction_string(e.at);
      }
      list.push_back(std::move(ev));
    }
    events.push_back(std::move(list));
  }
  out["events"] = std::move(events);
  Json messages = Json::array();
  for (const auto& [id, m] : trace.messages()) {
    Json rec;
    rec["msg"] = id;
    rec["from"] = m.send.proc;
    rec["send_index"] = m.send.index;
    rec["to"] = m.to;
    rec["recv_index"] = m.receive ? Json(m.receive->index) : Json(nullptr);
    messages.push_back(std::move(rec));
  }
  out["messages"] = std::move(messages);
  return out;
}

namespace {

std::string_view status_name(QueryRecord::Status s) {
  switch (s) {
    case QueryRecord::Status::ready: return "ready";
    case QueryRecord::Status::blocked: return "blocked";
    case QueryRecord::Status::error: return "error";
  }
  return "error";
}

}  // namespace

Json to_json(const RunResult& result) {
  Json out;
  out["scenario"] = result.scenario_id;
  out["algorithm"] = result.algorithm;
  out["cover"] = result.cover ? Json(result.cover->members()) : Json(nullptr);
  out["trace"] = to_json(result.trace);
  Json stamps = Json::array();
  for (const auto& rec : result.timestamps) {
    stamps.push_back({{"proc", rec.event.proc},
                      {"index", rec.event.index},
                      {"at", rational_json(rec.at)},
                      {"timestamp", to_json(rec.timestamp)}});
  }
  out["timestamps"] = std::move(stamps);
  Json queries = Json::array();
  for (const auto& q : result.queries) {
    Json rec{{"proc", q.query.proc}, {"index", q.query.index}, {"at", rational_json(q.query.at)},
             {"status", status_name(q.status)}};
    if (q.status == QueryRecord::Status::blocked) rec["missing"] = q.missing;
    if (q.unblocked_at) rec["unblocked_at"] = rational_json(*q.unblocked_at);
    if (q.answer) rec["timestamp"] = to_json(*q.answer);
    if (q.status == QueryRecord::Status::error) rec["error"] = q.error;
    queries.push_back(std::move(rec));
  }
  out["queries"] = std::move(queries);
  Json controls = Json::array();
  for (const auto& c : result.controls) {
    Json rec = to_json(c.message);
    rec["sent_at"] = rational_json(c.sent_at);
    rec["delivered_at"] = rational_json(c.delivered_at);
    controls.push_back(std::move(rec));
  }
  out["controls"] = std::move(controls);
  return out;
}

Json to_json(const ScenarioScript& script) {
  Json out;
  out["id"] = script.id;
  out["processes"] = script.processes;
  Json edges = Json::array();
  for (const auto& [a, b] : script.edges) edges.push_back({a, b});
  out["edges"] = std::move(edges);
  switch (script.cover.mode) {
    case CoverSpec::Mode::given: out["cover"] = script.cover.members; break;
    case CoverSpec::Mode::exact: out["cover"] = "exact"; break;
    case CoverSpec::Mode::greedy: out["cover"] = "greedy"; break;
  }
  if (script.neighbor_restricted) out["neighbor_restricted"] = true;
  out["seed"] = script.seed;
  if (script.control_delay.per_pair.empty()) {
    out["control_delay"] = rational_json(script.control_delay.fallback);
  } else {
    Json pairs = Json::array();
    for (const auto& [key, d] : script.control_delay.per_pair) {
      pairs.push_back({{"from", key.first}, {"to", key.second}, {"delay", rational_json(d)}});
    }
    out["control_delay"] = {{"default", rational_json(script.control_delay.fallback)}, {"pairs", std::move(pairs)}};
  }
  Json actions = Json::array();
  for (const auto& a : script.actions) {
    Json rec{{"at", rational_json(a.at)}, {"proc", a.proc}};
    if (const auto* s = std::get_if<SendAction>(&a.kind)) {
      rec["kind"] = "send";
      rec["to"] = s->to;
      rec["delay"] = rational_json(s->delay);
    } else {
      rec["kind"] = "compute";
    }
    actions.push_back(std::move(rec));
  }
  out["actions"] = std::move(actions);
  Json queries = Json::array();
  for (const auto& q : script.queries) {
    queries.push_back({{"proc", q.proc}, {"index", q.index}, {"at", rational_json(q.at)}});
  }
  out["queries"] = std::move(queries);
  return out;
}

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::ParseError, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class T>
T integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw Error(Errc::ParseError, std::string(what) + " must be an integer");
  if (j.is_number_unsigned()) return static_cast<T>(j.get<std::uint64_t>());
  const auto v = j.get<std::int64_t>();
  if (v < 0) throw Error(Errc::ParseError, std::string(what) + " must not be negative");
  return static_cast<T>(v);
}

}  // namespace

ScenarioScript scenario_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::ParseError, "scenario must be a JSON object");
  ScenarioScript s;
  if (j.contains("id")) {
    if (!j["id"].is_string()) throw Error(Errc::ParseError, "id must be a string");
    s.id = j["id"].get<std::string>();
  }
  s.processes = integer<std::size_t>(field(j, "processes"), "processes");
  if (j.contains("edges")) {
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2) throw Error(Errc::ParseError, "edge must be a pair");
      s.edges.emplace_back(integer<ProcessId>(e[0], "edge endpoint"), integer<ProcessId>(e[1], "edge endpoint"));
    }
  }
  if (j.contains("cover")) {
    const auto& c = j["cover"];
    if (c.is_string() && c == "exact") {
      s.cover.mode = CoverSpec::Mode::exact;
    } else if (c.is_string() && c == "greedy") {
      s.cover.mode = CoverSpec::Mode::greedy;
    } else if (c.is_array()) {
      s.cover.mode = CoverSpec::Mode::given;
      for (const auto& m : c) s.cover.members.push_back(integer<ProcessId>(m, "cover member"));
    } else {
      throw Error(Errc::ParseError, "cover must be a list, \"exact\" or \"greedy\"");
    }
  }
  if (j.contains("neighbor_restricted")) {
    if (!j["neighbor_restricted"].is_boolean()) throw Error(Errc::ParseError, "neighbor_restricted must be a boolean");
    s.neighbor_restricted = j["neighbor_restricted"].get<bool>();
  }
  if (j.contains("seed")) s.seed = integer<std::uint64_t>(j["seed"], "seed");
  if (j.contains("control_delay")) {
    const auto& cd = j["control_delay"];
    if (cd.is_object()) {
      if (cd.contains("default")) s.control_delay.fallback = rational_from_json(cd["default"]);
      if (cd.contains("pairs")) {
        for (const auto& p : cd["pairs"]) {
          s.control_delay.per_pair[{integer<ProcessId>(field(p, "from"), "from"),
                                    integer<ProcessId>(field(p, "to"), "to")}] = rational_from_json(field(p, "delay"));
        }
      }
    } else {
      s.control_delay.fallback = rational_from_json(cd);
    }
  }
  if (j.contains("actions")) {
    for (const auto& a : j["actions"]) {
      Action act;
      act.at = rational_from_json(field(a, "at"));
      act.proc = integer<ProcessId>(field(a, "proc"), "proc");
      const auto& kind = field(a, "kind");
      if (kind == "send") {
        act.kind = SendAction{integer<ProcessId>(field(a, "to"), "to"), rational_from_json(field(a, "delay"))};
      } else if (kind == "compute") {
        act.kind = ComputeAction{};
      } else {
        throw Error(Errc::ParseError, "action kind must be \"send\" or \"compute\"");
      }
      s.actions.push_back(std::move(act));
    }
  }
  if (j.contains("queries")) {
    for (const auto& q : j["queries"]) {
      s.queries.push_back({integer<ProcessId>(field(q, "proc"), "proc"),
                           integer<std::uint32_t>(field(q, "index"), "index"), rational_from_json(field(q, "at"))});
    }
  }
  return s;
}

ScenarioScript load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::FileNotFound, path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, path.string() + ": " + e.what());
  }
  auto script = scenario_from_json(j);
  if (script.id.empty()) script.id = path.stem().string();
  return script;
}

std::string format(const VectorTimestamp& ts) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < ts.size(); ++i) out << (i ? "," : "") << ts[i].get_str();
  out << ')';
  return out.str();
}

std::string format(const InlineTimestamp& ts) {
  if (ts.in_cover()) return format(ts.vect);
  std::ostringstream out;
  out << "(p" << ts.outside->id << ',' << ts.outside->index << ',' << format(ts.vect) << ",(";
  for (std::size_t i = 0; i < ts.vect.size(); ++i) out << (i ? "," : "") << slot_text(ts.next_at(i));
  out << "))";
  return out.str();
}

std::string format(const AnyTimestamp& ts) {
  return std::visit([](const auto& t) { return format(t); }, ts);
}

}  // namespace causal
