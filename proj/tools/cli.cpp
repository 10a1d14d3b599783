// Copyright 2026 The CRSTIP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "crstip/codec.hpp"
#include "crstip/compare.hpp"
#include "crstip/engine.hpp"
#include "crstip/error.hpp"
#include "crstip/radar.hpp"
#include "crstip/scheme_parser.hpp"
#include "crstip/service.hpp"
#include "crstip/store.hpp"

namespace crstip::cli {

namespace {

constexpr const char* kBuiltinPrefix = "builtin:";

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

Scheme load_scheme_ref(const std::string& ref) {
  if (ref.rfind(kBuiltinPrefix, 0) == 0) {
    std::string name = ref.substr(std::string(kBuiltinPrefix).size());
    if (name != builtin_scheme().id) {
      throw Error(codes::kNotFound, "no builtin scheme '" + name + "'");
    }
    return builtin_scheme();
  }
  ParseResult parsed = parse_scheme(read_file(ref));
  if (!parsed.ok()) {
    throw Error(codes::kInvalidScheme,
                ref + ":" + format_diagnostic(parsed.diagnostics.front()));
  }
  return std::move(*parsed.scheme);
}

Json load_json(const std::string& path) {
  std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(codes::kCorruptDocument, path + ": " + e.what());
  }
}

template <typename Decode>
auto decode_file(const Json& doc, const std::string& path, Decode decoder) {
  try {
    return decoder(doc);
  } catch (const Error& e) {
    throw Error(codes::kCorruptDocument, path + ": " + e.what());
  }
}

AssessmentSession load_session_file(const std::string& path) {
  return decode_file(load_json(path), path, session_from_json);
}

/// Accepts a profile document or a session document (scored on the fly).
Profile load_profile_file(const std::string& path, const Scheme& scheme) {
  Json doc = load_json(path);
  if (doc.is_object() && doc.contains("answers")) {
    AssessmentSession session = decode_file(doc, path, session_from_json);
    return compute_profile(scheme, session);
  }
  return decode_file(doc, path, profile_from_json);
}

void write_output(const std::string& path, const std::string& text) {
  std::filesystem::path target(path);
  if (target.has_parent_path() && !std::filesystem::exists(target.parent_path())) {
    throw Error(codes::kIoFailure, "directory " + target.parent_path().string() +
                                       " does not exist");
  }
  write_file_atomic(target.has_parent_path() ? target : std::filesystem::path(".") / target,
                    text);
}

std::string percent(double fraction) {
  char buffer[16];
  std::snprintf(buffer, sizeof buffer, "%3.0f%%", fraction * 100.0);
  return buffer;
}

std::string pad(const std::string& text, std::size_t width) {
  return text.size() >= width ? text : text + std::string(width - text.size(), ' ');
}

std::string lpad(const std::string& text, std::size_t width) {
  return text.size() >= width ? text : std::string(width - text.size(), ' ') + text;
}

std::string area_label(const Scheme& scheme, const std::string& area_id) {
  const KeyArea* area = scheme.find_area(area_id);
  return area ? area->name : area_id;
}

std::string series_name(const std::string& path) {
  std::string stem = std::filesystem::path(path).filename().string();
  return stem.substr(0, stem.find('.'));
}

// ---- commands ----

int cmd_validate(const Io& io, const std::string& file) {
  std::string text;
  if (file.rfind(kBuiltinPrefix, 0) == 0) {
    load_scheme_ref(file);
    text = std::string(builtin_scheme_text());
  } else {
    text = read_file(file);
  }
  ParseResult parsed = parse_scheme(text);
  for (const auto& diagnostic : parsed.diagnostics) {
    io.err << file << ":" << format_diagnostic(diagnostic) << "\n";
  }
  return parsed.ok() ? kExitOk : kExitFailure;
}

struct AssessOptions {
  std::string scheme = "builtin:crstip";
  std::string subject;
  std::string kind = "system";
  std::string notes;
  std::string out;
  std::string answers;
  std::string id;
  std::string now;
  bool json = false;
};

enum class Reply { kYes, kNo, kUnknown, kSkip, kInvalid };

Reply parse_reply(const std::string& token) {
  if (token == "y" || token == "yes") return Reply::kYes;
  if (token == "n" || token == "no") return Reply::kNo;
  if (token == "u" || token == "unknown") return Reply::kUnknown;
  if (token == "s" || token == "skip") return Reply::kSkip;
  return Reply::kInvalid;
}

std::string trim(const std::string& text) {
  auto first = text.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

int cmd_assess(const Io& io, const AssessOptions& options) {
  Scheme scheme = load_scheme_ref(options.scheme);
  auto kind = parse_subject_kind(options.kind);
  if (!kind) throw Error(codes::kValidation, "--kind must be organization, process or system");

  SessionEnvironment env = system_environment();
  if (!options.now.empty() && !parse_timestamp(options.now)) {
    throw Error(codes::kValidation, "--now must be an RFC 3339 UTC timestamp");
  }
  if (!options.id.empty()) {
    if (!is_valid_document_id(options.id)) throw Error(codes::kValidation, "--id is not usable");
    env.new_id = [id = options.id] { return id; };
  }
  if (!options.now.empty()) env.now = [now = options.now] { return now; };

  AssessmentSession session =
      start_session(scheme, SubjectInfo{options.subject, *kind, options.notes}, env);

  std::ifstream script_file;
  const bool scripted = !options.answers.empty();
  if (scripted) {
    script_file.open(options.answers);
    if (!script_file) {
      throw Error(std::filesystem::exists(options.answers) ? codes::kIoFailure : codes::kNotFound,
                  "cannot open answer script " + options.answers);
    }
  }
  std::istream& source = scripted ? static_cast<std::istream&>(script_file) : io.in;

  // Next meaningful line, or nullopt at end of input.
  auto next_line = [&]() -> std::optional<std::string> {
    std::string line;
    while (std::getline(source, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      return line;
    }
    return std::nullopt;
  };

  bool exhausted = false;
  for (const auto& area : scheme.areas) {
    for (const auto& level : area.levels) {
      for (const auto& indicator : level.indicators) {
        if (exhausted) break;
        while (true) {
          if (!scripted) {
            io.out << "[" << area.name << " / level " << level.rank << " " << level.name
                   << "]\n  " << indicator.id << ": " << indicator.statement
                   << "\n  answer [y/n/u/skip]: " << std::flush;
          }
          auto line = next_line();
          if (!line) {
            exhausted = true;
            break;
          }
          auto space = line->find_first_of(" \t");
          std::string token = line->substr(0, space);
          std::string note = space == std::string::npos ? "" : trim(line->substr(space));
          Reply reply = parse_reply(token);
          if (reply == Reply::kInvalid) {
            if (scripted) {
              throw Error(codes::kValidation, "answer script: '" + token +
                                                  "' is not y, n, u or skip (for " +
                                                  indicator.id + ")");
            }
            io.out << "  please answer y, n, u or skip\n";
            continue;
          }
          if (reply != Reply::kSkip) {
            AnswerValue value = reply == Reply::kYes  ? AnswerValue::kYes
                                : reply == Reply::kNo ? AnswerValue::kNo
                                                      : AnswerValue::kUnknown;
            session = record_answer(scheme, std::move(session), indicator.id, value, note, env);
          }
          break;
        }
      }
    }
  }

  std::string document = canonical_dump(to_json(session));
  std::string out_path = options.out.empty() ? "session-" + session.id + ".json" : options.out;
  write_output(out_path, document);
  if (options.json) {
    io.out << document;
  } else {
    io.out << "Recorded " << session.answers.size() << " answer(s) for " << session.subject.name
           << " in " << out_path << "\n";
  }
  return kExitOk;
}

int cmd_report(const Io& io, const std::string& session_file, const std::string& scheme_ref,
               bool json, const std::string& profile_out) {
  Scheme scheme = load_scheme_ref(scheme_ref);
  AssessmentSession session = load_session_file(session_file);
  Profile profile = compute_profile(scheme, session);
  auto violations = check_consistency(scheme, session);
  if (!profile_out.empty()) write_output(profile_out, canonical_dump(to_json(profile)));
  if (json) {
    io.out << canonical_dump(profile_report_json(profile, violations));
    return kExitOk;
  }
  io.out << "Subject: " << profile.subject.name << " (" << to_string(profile.subject.kind)
         << ")\n";
  io.out << "Scheme:  " << scheme.name << " [" << scheme.id << " " << scheme.version << "]\n\n";
  std::size_t width = 4;
  for (const auto& area : scheme.areas) width = std::max(width, area.name.size());
  io.out << pad("Area", width) << "  Raw  Effective  Complete\n";
  for (std::size_t i = 0; i < scheme.areas.size(); ++i) {
    const KeyArea& area = scheme.areas[i];
    const AreaProfile& entry = profile.areas[i];
    const Level* level = area.find_level(entry.effective_level);
    io.out << pad(area.name, width) << "  " << lpad(std::to_string(entry.raw_level), 3) << "  "
           << lpad(std::to_string(entry.effective_level), 9) << "  "
           << lpad(percent(entry.completeness), 8) << "  " << (level ? level->name : "") << "\n";
  }
  io.out << "\n";
  if (violations.empty()) {
    io.out << "Violations: none\n";
  } else {
    io.out << "Violations:\n";
    for (const auto& v : violations) {
      io.out << "  " << to_string(v.subject) << " requires " << to_string(v.requires_level)
             << ", observed " << area_label(scheme, v.requires_level.area) << " at level "
             << v.observed_rank << "\n";
    }
  }
  return kExitOk;
}

int cmd_compare(const Io& io, const std::string& before_file, const std::string& after_file,
                const std::string& scheme_ref, bool json) {
  Scheme scheme = load_scheme_ref(scheme_ref);
  ProfileDiff diff = compare_profiles(load_profile_file(before_file, scheme),
                                      load_profile_file(after_file, scheme));
  if (json) {
    io.out << canonical_dump(to_json(diff));
    return kExitOk;
  }
  std::size_t width = 4;
  for (const auto& area : diff.areas) width = std::max(width, area_label(scheme, area.area).size());
  io.out << pad("Area", width) << "  Before  After  Delta\n";
  for (const auto& area : diff.areas) {
    std::string delta = (area.delta > 0 ? "+" : "") + std::to_string(area.delta);
    io.out << pad(area_label(scheme, area.area), width) << "  "
           << lpad(std::to_string(area.before), 6) << "  " << lpad(std::to_string(area.after), 5)
           << "  " << lpad(delta, 5) << "\n";
  }
  io.out << "\nImproved: " << diff.improved << "  Regressed: " << diff.regressed
         << "  Unchanged: " << diff.unchanged
         << "  Newly satisfied indicators: " << diff.newly_satisfied << "\n";
  return kExitOk;
}

int cmd_roadmap(const Io& io, const std::string& session_file, const std::string& target_text,
                const std::string& scheme_ref, bool json) {
  Scheme scheme = load_scheme_ref(scheme_ref);
  AssessmentSession session = load_session_file(session_file);
  Targets targets = parse_targets(scheme, target_text);
  Roadmap roadmap = build_roadmap(scheme, compute_profile(scheme, session), targets);
  if (json) {
    io.out << canonical_dump(to_json(roadmap));
    return kExitOk;
  }
  io.out << "Roadmap for " << session.subject.name << " to " << target_text << ": "
         << roadmap.steps.size() << " step(s)\n";
  for (const auto& step : roadmap.steps) {
    const Level* level = scheme.find_level(step.reached);
    io.out << "\n" << step.index << ". " << area_label(scheme, step.reached.area)
           << " -> level " << step.reached.rank << " (" << (level ? level->name : "") << ")\n";
    for (const auto& d : step.discharged) {
      io.out << "   after step " << d.step << ": " << area_label(scheme, d.requirement.area)
             << " level " << d.requirement.rank << "\n";
    }
    if (step.indicators.empty()) io.out << "   (all indicators already satisfied)\n";
    for (const auto& indicator : step.indicators) {
      io.out << "   [ ] " << indicator.id << "  " << indicator.statement << "\n";
    }
  }
  return kExitOk;
}

int cmd_render(const Io& io, const std::vector<std::string>& files, const std::string& out,
               const std::string& scheme_ref, const std::vector<std::string>& names,
               const std::string& title) {
  Scheme scheme = load_scheme_ref(scheme_ref);
  if (!names.empty() && names.size() != files.size()) {
    throw Error(codes::kValidation, "--names needs one name per profile");
  }
  std::vector<std::pair<std::string, Profile>> series;
  for (std::size_t i = 0; i < files.size(); ++i) {
    series.emplace_back(names.empty() ? series_name(files[i]) : names[i],
                        load_profile_file(files[i], scheme));
  }
  std::string svg = render_radar(chart_from_profiles(scheme, series, title));
  if (out.empty() || out == "-") {
    io.out << svg;
  } else {
    write_output(out, svg);
  }
  return kExitOk;
}

int cmd_serve(const Io& io, const std::string& listen, const std::string& data,
              const std::string& static_dir) {
  auto address = parse_listen_address(listen);
  if (!address) {
    io.err << "crstip: --listen expects <host:port>\n";
    return kExitUsage;
  }
  AssessmentService service(data);
  std::optional<std::filesystem::path> web;
  if (!static_dir.empty()) web = static_dir;
  HttpServer server(service, web);
  int port = server.bind(address->first, address->second);
  if (port < 0) {
    io.err << "crstip: cannot listen on " << listen << "\n";
    return kExitIo;
  }
  io.out << "crstip: serving " << data << " on http://" << address->first << ":" << port
         << "\n"
         << std::flush;
  return server.run() ? kExitOk : kExitIo;
}

int exit_code_for(const Error& e) {
  const std::string& code = e.code();
  if (code == codes::kIoFailure || code == codes::kNotFound) return kExitIo;
  return kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Io io{in, out, err};
  CLI::App app{"Maturity assessment of compliance, risk assessment and security testing "
               "processes",
               "crstip"};
  app.require_subcommand(1);

  std::string validate_file;
  auto* validate = app.add_subcommand("validate", "Check a scheme definition file");
  validate->add_option("scheme-file", validate_file, "Scheme file or builtin:crstip")->required();

  AssessOptions assess_options;
  auto* assess = app.add_subcommand("assess", "Run the questionnaire and write a session");
  assess->add_option("--scheme", assess_options.scheme, "Scheme file or builtin:crstip");
  assess->add_option("--subject", assess_options.subject, "Name of the assessed subject")
      ->required();
  assess->add_option("--kind", assess_options.kind, "organization, process or system");
  assess->add_option("--notes", assess_options.notes, "Free-form subject notes");
  assess->add_option("--out", assess_options.out, "Session file to write");
  assess->add_option("--answers", assess_options.answers,
                     "Replay answers from a script instead of stdin");
  assess->add_option("--id", assess_options.id, "Use this session id");
  assess->add_option("--now", assess_options.now, "Use this RFC 3339 timestamp as the clock");
  assess->add_flag("--json", assess_options.json, "Print the session document");

  std::string scheme_ref = "builtin:crstip";
  bool json = false;

  std::string report_file, profile_out;
  auto* report = app.add_subcommand("report", "Score a session");
  report->add_option("session-file", report_file)->required();
  report->add_option("--scheme", scheme_ref, "Scheme file or builtin:crstip");
  report->add_option("--profile-out", profile_out, "Also write the profile document");
  report->add_flag("--json", json, "Machine-readable output");

  std::string before_file, after_file;
  auto* compare = app.add_subcommand("compare", "Compare two profiles");
  compare->add_option("profile-before", before_file)->required();
  compare->add_option("profile-after", after_file)->required();
  compare->add_option("--scheme", scheme_ref, "Scheme file or builtin:crstip");
  compare->add_flag("--json", json, "Machine-readable output");

  std::string roadmap_file, target_text;
  auto* roadmap = app.add_subcommand("roadmap", "Plan the steps towards target levels");
  roadmap->add_option("session-file", roadmap_file)->required();
  roadmap->add_option("--target", target_text, "area=rank,... or all=<rank>")->required();
  roadmap->add_option("--scheme", scheme_ref, "Scheme file or builtin:crstip");
  roadmap->add_flag("--json", json, "Machine-readable output");

  std::vector<std::string> render_files, render_names;
  std::string render_out, render_title;
  auto* render = app.add_subcommand("render", "Draw a radar chart of one or two profiles");
  render->add_option("profile-file", render_files)->required()->expected(1, 2);
  render->add_option("--out", render_out, "SVG file to write ('-' for stdout)");
  render->add_option("--scheme", scheme_ref, "Scheme file or builtin:crstip");
  render->add_option("--names", render_names, "Series names")->delimiter(',');
  render->add_option("--title", render_title, "Chart title");

  std::string listen = kDefaultListen;
  const char* env_data = std::getenv("CRSTIP_DATA");
  std::string data = env_data && *env_data ? env_data : kDefaultDataDir;
  std::string static_dir;
  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  serve->add_option("--listen", listen, "host:port");
  serve->add_option("--data", data, "Store directory");
  serve->add_option("--static", static_dir, "Directory served under /");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(io, validate_file);
    if (*assess) return cmd_assess(io, assess_options);
    if (*report) return cmd_report(io, report_file, scheme_ref, json, profile_out);
    if (*compare) return cmd_compare(io, before_file, after_file, scheme_ref, json);
    if (*roadmap) return cmd_roadmap(io, roadmap_file, target_text, scheme_ref, json);
    if (*render) {
      return cmd_render(io, render_files, render_out, scheme_ref, render_names, render_title);
    }
    if (*serve) return cmd_serve(io, listen, data, static_dir);
  } catch (const Error& e) {
    err << "crstip: error: " << e.code() << ": " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "crstip: error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace crstip::cli
