// Copyright 2026 The loqgate authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace testutil {

inline std::string cli_path() {
#ifdef LOQGATE_BIN
  return LOQGATE_BIN;
#else
  const char* env = std::getenv("LOQGATE_BIN");
  if (env == nullptr) throw std::runtime_error("set LOQGATE_BIN to the CLI binary");
  return env;
#endif
}

inline std::filesystem::path make_temp_dir() {
  std::string tmpl = (std::filesystem::temp_directory_path() / "loqgate_test_XXXXXX").string();
  char* got = mkdtemp(tmpl.data());
  if (got == nullptr) throw std::runtime_error("mkdtemp failed");
  return std::filesystem::path(got);
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

/// Runs the CLI with the given argument string, capturing combined output.
inline CliResult run_cli(const std::string& args) {
  std::filesystem::path dir = make_temp_dir();
  std::filesystem::path log = dir / "log.txt";
  std::string cmd = cli_path() + " " + args + " > " + log.string() + " 2>&1";
  int raw = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = (raw != -1 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
  r.output = slurp(log);
  std::filesystem::remove_all(dir);
  return r;
}

}  // namespace testutil
