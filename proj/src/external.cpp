#include "ddgpce/external.hpp"

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>
#include <vector>

#include "ddgpce/error.hpp"

extern char** environ;

namespace ddgpce {
namespace {

namespace fs = std::filesystem;

// Scratch directory removed on scope exit.
class ScratchDir {
 public:
  ScratchDir() {
    std::string pattern = (fs::temp_directory_path() / "ddgpce-XXXXXX").string();
    if (mkdtemp(pattern.data()) == nullptr) {
      fail(ErrorKind::ModelEvaluation, "cannot create scratch directory for external model");
    }
    path_ = pattern;
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  fs::path operator/(const char* name) const { return path_ / name; }

 private:
  fs::path path_;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

}  // namespace

Eigen::VectorXd run_external_model(const ExternalModel& model, const Eigen::MatrixXd& inputs) {
  ScratchDir dir;
  const fs::path in_path = dir / "input.csv";
  const fs::path out_path = dir / "output.txt";
  const fs::path err_path = dir / "stderr.txt";
  {
    std::ofstream in(in_path);
    for (Eigen::Index j = 0; j < inputs.cols(); ++j) {
      in << (j > 0 ? "," : "") << 'x' << (j + 1);
    }
    in << '\n' << std::setprecision(17);
    for (Eigen::Index l = 0; l < inputs.rows(); ++l) {
      for (Eigen::Index j = 0; j < inputs.cols(); ++j) {
        in << (j > 0 ? "," : "") << inputs(l, j);
      }
      in << '\n';
    }
  }

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, in_path.c_str(), O_RDONLY, 0);
  posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, out_path.c_str(),
                                   O_WRONLY | O_CREAT | O_TRUNC, 0600);
  posix_spawn_file_actions_addopen(&actions, STDERR_FILENO, err_path.c_str(),
                                   O_WRONLY | O_CREAT | O_TRUNC, 0600);
  posix_spawnattr_t attributes;
  posix_spawnattr_init(&attributes);
  // Own process group so a timeout can kill the whole pipeline.
  posix_spawnattr_setflags(&attributes, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&attributes, 0);

  std::string shell = "/bin/sh";
  std::string flag = "-c";
  std::string command = model.command;
  std::vector<char*> argv{shell.data(), flag.data(), command.data(), nullptr};
  pid_t pid = 0;
  const int spawned = posix_spawn(&pid, shell.c_str(), &actions, &attributes, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  posix_spawnattr_destroy(&attributes);
  require(spawned == 0, ErrorKind::ModelEvaluation,
          "cannot spawn external model '" + model.command + "'");

  int status = 0;
  const auto start = std::chrono::steady_clock::now();
  while (true) {
    const pid_t done = waitpid(pid, &status, model.timeout_seconds > 0.0 ? WNOHANG : 0);
    if (done == pid) break;
    require(done == 0, ErrorKind::ModelEvaluation, "waiting for external model failed");
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    if (elapsed.count() > model.timeout_seconds) {
      kill(-pid, SIGKILL);
      waitpid(pid, &status, 0);
      fail(ErrorKind::ModelEvaluation, "external model '" + model.command + "' timed out after " +
                                           std::to_string(model.timeout_seconds) + " s");
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }

  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    const std::string code = WIFEXITED(status) ? "exit code " + std::to_string(WEXITSTATUS(status))
                                               : "signal " + std::to_string(WTERMSIG(status));
    fail(ErrorKind::ModelEvaluation, "external model '" + model.command + "' failed with " +
                                         code + "; stderr: " + trim(read_file(err_path)));
  }

  std::istringstream out(read_file(out_path));
  std::vector<double> values;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(out, line)) {
    ++line_number;
    const std::string text = trim(line);
    if (text.empty()) {
      fail(ErrorKind::ModelEvaluation,
           "external model output line " + std::to_string(line_number) + " is empty");
    }
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) {
      fail(ErrorKind::ModelEvaluation, "external model output line " +
                                           std::to_string(line_number) + " is not a number: '" +
                                           text + "'");
    }
    values.push_back(v);
  }
  require(values.size() == static_cast<std::size_t>(inputs.rows()), ErrorKind::ModelEvaluation,
          "external model output count mismatch: expected " + std::to_string(inputs.rows()) +
              " values, got " + std::to_string(values.size()));
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

BatchFunction external_function(ExternalModel model) {
  return [model = std::move(model)](const Eigen::MatrixXd& points) {
    return run_external_model(model, points);
  };
}

bool external_command_available(const std::string& command) {
  std::istringstream words(command);
  std::string program;
  words >> program;
  if (program.empty()) return false;
  auto executable = [](const fs::path& p) { return access(p.c_str(), X_OK) == 0 && !fs::is_directory(p); };
  if (program.find('/') != std::string::npos) return executable(program);
  const char* path = std::getenv("PATH");
  if (path == nullptr) return false;
  std::istringstream dirs(path);
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (!dir.empty() && executable(fs::path(dir) / program)) return true;
  }
  return false;
}

}  // namespace ddgpce
