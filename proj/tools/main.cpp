// vtkb: command-line front end over the VTKB shared library.

#include <cstdlib>
#include <functional>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "http_server.hpp"
#include "kb_handle.hpp"

namespace vtkb_cli {
namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Thrown for failures already reported on stderr.
struct Exit {
  int code;
};

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "vtkb: cannot read " << path << "\n";
    throw Exit{kExitFailure};
  }
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  std::string text = read_input(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::cerr << path << ": malformed JSON: " << e.what() << "\n";
    throw Exit{kExitFailure};
  }
}

// "origin:line:col: Code: message" on stderr.
void report(const std::string& origin, const Reply& r) {
  json err;
  try {
    err = r.parsed().at("error");
  } catch (const std::exception&) {
    std::cerr << "vtkb: " << vtkb_status_name(r.status) << "\n";
    return;
  }
  std::cerr << origin << ":";
  if (err.contains("line")) {
    std::cerr << err["line"].get<int>() << ":" << err["column"].get<int>() << ":";
  }
  std::cerr << " " << err.value("code", "Error") << ": " << err.value("message", "");
  if (err.contains("expected")) {
    std::cerr << " (expected";
    for (const auto& e : err["expected"]) std::cerr << " " << e.get<std::string>();
    std::cerr << ")";
  }
  std::cerr << "\n";
}

double default_score_from_env() {
  const char* s = std::getenv("VTKB_DEFAULT_SCORE");
  vtkb_options defaults;
  vtkb_options_init(&defaults);
  if (!s || !*s) return defaults.default_score;
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (*end != '\0' || !(v >= 0.0 && v <= 1.0)) {
    std::cerr << "vtkb: VTKB_DEFAULT_SCORE must be a number in [0, 1], got '" << s << "'\n";
    throw Exit{kExitUsage};
  }
  return v;
}

KbPtr load(const std::string& path, bool default_rules = true) {
  vtkb_options options;
  vtkb_options_init(&options);
  options.default_score = default_score_from_env();
  options.default_rules_enabled = default_rules ? 1 : 0;
  vtkb_kb* kb = nullptr;
  char* err = nullptr;
  vtkb_status s = vtkb_load_file(path.c_str(), &options, &kb, &err);
  Reply r = take(s, err);
  if (s != VTKB_OK) {
    report(path, r);
    throw Exit{kExitFailure};
  }
  return KbPtr(kb);
}

// Prints the JSON reply verbatim or hands it to the text renderer.
int emit(const Reply& r, bool as_json, const std::string& origin,
         const std::function<void(const json&)>& render) {
  if (!r.ok()) {
    report(origin, r);
    return kExitFailure;
  }
  if (as_json) {
    std::cout << r.body << "\n";
  } else {
    render(r.parsed());
  }
  return 0;
}

std::string fixed(double v) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(3);
  ss << v;
  return ss.str();
}

void render_conflicts(const json& conflicts, const char* indent) {
  for (const auto& c : conflicts) {
    std::cout << indent << c["severity"].get<std::string>() << "\t" << c["rule"].get<std::string>()
              << "\t" << c["message"].get<std::string>() << "\n";
  }
}

void render_placements(const json& placements) {
  for (const auto& p : placements) {
    std::cout << "  " << p["data"].get<std::string>() << "\t" << p["technique"].get<std::string>()
              << "\t" << p["slot"].get<std::string>() << "\t"
              << fixed(p["usability"].get<double>()) << " (" << p["source"].get<std::string>()
              << ")\n";
  }
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Visualization-technique knowledge base engine"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(vtkb_version()));

  std::string kb_path;
  bool as_json = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("kb", kb_path, "VTKB knowledge base file")->required();
    sub->add_flag("--json", as_json, "print the JSON response instead of text");
  };

  auto* validate = app.add_subcommand("validate", "check a KB for integrity violations");
  add_common(validate);

  bool emit_hierarchy = false;
  auto* classify = app.add_subcommand("classify", "print the subsumption closure");
  add_common(classify);
  classify->add_flag("--emit-hierarchy", emit_hierarchy,
                     "print each concept with its direct parents instead");

  std::string query_path;
  bool explain = false;
  auto* query = app.add_subcommand("query", "evaluate a conjunctive query");
  add_common(query);
  query->add_option("--query", query_path, "query file, or - for stdin")->required();
  query->add_flag("--explain", explain, "include per-atom justifications (JSON only)");

  std::string data_path;
  auto* match = app.add_subcommand("match", "list techniques able to display a data item");
  add_common(match);
  match->add_option("--data", data_path, "DataItem JSON file")->required();

  std::string scene_path;
  int top = 5;
  auto* recommend = app.add_subcommand("recommend", "rank technique assignments for a scene");
  add_common(recommend);
  recommend->add_option("--scene", scene_path, "SceneSpec JSON file")->required();
  recommend->add_option("--top", top, "number of plans")->check(CLI::PositiveNumber);

  std::string plan_path;
  auto* check = app.add_subcommand("check", "check a (partial) plan against the rules");
  add_common(check);
  check->add_option("--scene", scene_path, "SceneSpec JSON file")->required();
  check->add_option("--plan", plan_path, "plan JSON file: [{data, technique, slot?}]")
      ->required();

  ServiceConfig config;
  bool no_default_rules = false;
  auto* serve_cmd = app.add_subcommand("serve", "serve the JSON API over HTTP");
  serve_cmd->add_option("kb", config.kb_path, "VTKB knowledge base file")->required();
  serve_cmd->add_option("--port", config.port, "TCP port")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--host", config.host, "address to bind");
  serve_cmd->add_option("--cors-origin", config.cors_allowed_origin,
                        "value for Access-Control-Allow-Origin");
  serve_cmd->add_flag("--no-default-rules", no_default_rules,
                      "apply no rules to scenes without active_rules");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*validate) {
      Reply r = call(vtkb_validate_file, kb_path.c_str());
      int rc = emit(r, as_json, kb_path, [](const json& j) {
        for (const auto& v : j["violations"]) {
          std::cout << v["line"].get<int>() << ":" << v["column"].get<int>() << ": "
                    << v["kind"].get<std::string>() << ": " << v["message"].get<std::string>()
                    << "\n";
        }
      });
      if (rc != 0) return rc;
      return r.parsed()["valid"].get<bool>() ? 0 : kExitFailure;
    }
    if (*serve_cmd) {
      config.default_rules_enabled = !no_default_rules;
      KbPtr kb = load(config.kb_path, config.default_rules_enabled);
      return serve(kb.get(), config);
    }

    KbPtr kb = load(kb_path);
    if (*classify) {
      return emit(call(vtkb_classify, static_cast<const vtkb_kb*>(kb.get()),
                       emit_hierarchy ? 1 : 0),
                  as_json, kb_path, [&](const json& j) {
                    if (emit_hierarchy) {
                      for (const auto& c : j["concepts"]) {
                        std::cout << c["id"].get<std::string>();
                        for (const auto& p : c["parents"]) std::cout << "\t" << p.get<std::string>();
                        std::cout << "\n";
                      }
                      return;
                    }
                    for (const auto& p : j["pairs"]) {
                      std::cout << p[0].get<std::string>() << "\t" << p[1].get<std::string>()
                                << "\n";
                    }
                  });
    }
    if (*query) {
      json request = {{"query", read_input(query_path)}};
      if (explain) request["explain"] = true;
      return emit(call(vtkb_query, static_cast<const vtkb_kb*>(kb.get()),
                       request.dump().c_str()),
                  as_json, query_path, [](const json& j) {
                    for (const auto& row : j["rows"]) {
                      for (std::size_t i = 0; i < row.size(); ++i) {
                        std::cout << (i ? "\t" : "") << row[i].get<std::string>();
                      }
                      std::cout << "\n";
                    }
                  });
    }
    if (*match) {
      json request = read_json(data_path);
      return emit(call(vtkb_match, static_cast<const vtkb_kb*>(kb.get()),
                       request.dump().c_str()),
                  as_json, data_path, [](const json& j) {
                    for (const auto& c : j["candidates"]) std::cout << c.get<std::string>() << "\n";
                  });
    }
    if (*recommend) {
      json request = read_json(scene_path);
      request["top"] = top;
      return emit(call(vtkb_recommend, static_cast<const vtkb_kb*>(kb.get()),
                       request.dump().c_str()),
                  as_json, scene_path, [](const json& j) {
                    int rank = 0;
                    for (const auto& p : j["plans"]) {
                      std::cout << "#" << ++rank << "\tscore " << fixed(p["score"].get<double>())
                                << "\n";
                      render_placements(p["placements"]);
                      render_conflicts(p["warnings"], "  ");
                    }
                  });
    }
    if (*check) {
      json plan = read_json(plan_path);
      if (plan.is_object() && plan.contains("plan")) plan = plan["plan"];
      json request = {{"scene", read_json(scene_path)}, {"plan", plan}};
      Reply r = call(vtkb_check, static_cast<const vtkb_kb*>(kb.get()), request.dump().c_str());
      int rc = emit(r, as_json, plan_path, [](const json& j) {
        std::cout << (j["valid"].get<bool>() ? "valid" : "invalid") << "\tscore "
                  << fixed(j["score"].get<double>()) << "\n";
        render_placements(j["placements"]);
        render_conflicts(j["conflicts"], "");
      });
      if (rc != 0) return rc;
      return r.parsed()["valid"].get<bool>() ? 0 : kExitFailure;
    }
  } catch (const Exit& e) {
    return e.code;
  }
  return kExitUsage;
}

}  // namespace vtkb_cli

int main(int argc, char** argv) { return vtkb_cli::run(argc, argv); }
