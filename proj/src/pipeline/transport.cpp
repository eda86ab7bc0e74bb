// SPDX-License-Identifier: Apache-2.0

#include "virtfusion/pipeline/transport.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <csignal>
#include <fstream>
#include <thread>

#include <httplib.h>

#include "virtfusion/errors.hpp"

namespace virtfusion::pipeline {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StageError("transport: cannot read " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

std::string substitute(std::string text, std::string_view key,
                       const std::string& value) {
  std::size_t pos = 0;
  while ((pos = text.find(key, pos)) != std::string::npos) {
    text.replace(pos, key.size(), value);
    pos += value.size();
  }
  return text;
}

std::string run_subprocess(const ServiceEndpoint& endpoint,
                           std::string_view request,
                           const fs::path& work_dir) {
  static std::atomic<std::uint64_t> counter{0};
  const std::uint64_t token = counter.fetch_add(1);
  fs::create_directories(work_dir);
  const fs::path in_path =
      work_dir / ("stage_in_" + std::to_string(getpid()) + "_" +
                  std::to_string(token));
  const fs::path out_path =
      work_dir / ("stage_out_" + std::to_string(getpid()) + "_" +
                  std::to_string(token));
  {
    std::ofstream out(in_path, std::ios::binary | std::ios::trunc);
    out.write(request.data(), static_cast<std::streamsize>(request.size()));
  }

  std::string command = substitute(endpoint.address, "{in}", in_path.string());
  command = substitute(command, "{out}", out_path.string());

  const pid_t pid = fork();
  if (pid < 0) throw StageError("transport: fork failed");
  if (pid == 0) {
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }

  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::duration<double>(endpoint.timeout_s));
  int status = 0;
  for (;;) {
    const pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (done < 0) throw StageError("transport: waitpid failed");
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      fs::remove(in_path);
      fs::remove(out_path);
      throw StageError("transport: subprocess timed out after " +
                       std::to_string(endpoint.timeout_s) + "s: " + command);
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }

  fs::remove(in_path);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    fs::remove(out_path);
    throw StageError("transport: subprocess exited with status " +
                     std::to_string(WIFEXITED(status) ? WEXITSTATUS(status)
                                                      : -1) +
                     ": " + command);
  }
  if (!fs::exists(out_path)) {
    throw StageError("transport: subprocess produced no output file: " +
                     command);
  }
  std::string response = read_file(out_path);
  fs::remove(out_path);
  return response;
}

std::string run_http(const ServiceEndpoint& endpoint,
                     std::string_view request) {
  // Split "http://host:port/path".
  std::string url = endpoint.address;
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw StageError("transport: bad http address '" + url + "'");
  }
  const auto path_pos = url.find('/', scheme + 3);
  const std::string host_port =
      url.substr(0, path_pos == std::string::npos ? url.size() : path_pos);
  const std::string path =
      path_pos == std::string::npos ? "/" : url.substr(path_pos);

  httplib::Client client(host_port);
  client.set_connection_timeout(std::chrono::duration<double>(endpoint.timeout_s));
  client.set_read_timeout(std::chrono::duration<double>(endpoint.timeout_s));
  client.set_write_timeout(std::chrono::duration<double>(endpoint.timeout_s));

  auto result = client.Post(path, std::string(request), "application/json");
  if (!result) {
    throw StageError("transport: http request failed: " +
                     httplib::to_string(result.error()));
  }
  if (result->status != 200) {
    throw StageError("transport: http status " +
                     std::to_string(result->status) + " from " + url);
  }
  return result->body;
}

}  // namespace

std::string call_stage(const ServiceEndpoint& endpoint,
                       std::string_view request_envelope, MockDispatcher& mock,
                       const fs::path& work_dir) {
  std::string last_error;
  const int attempts = 1 + std::max(0, endpoint.retries);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0) {
      const double delay =
          endpoint.backoff_base_s * std::pow(2.0, attempt - 1);
      std::this_thread::sleep_for(std::chrono::duration<double>(delay));
    }
    try {
      std::string response;
      switch (endpoint.transport) {
        case Transport::Mock:
          response = mock.dispatch(request_envelope);
          break;
        case Transport::Subprocess:
          response = run_subprocess(endpoint, request_envelope, work_dir);
          break;
        case Transport::Http:
          response = run_http(endpoint, request_envelope);
          break;
      }
      // A malformed response is a failure like any other.
      StageResponse::from_envelope(response);
      return response;
    } catch (const std::exception& e) {
      last_error = e.what();
    }
  }
  throw StageError("stage " + std::string(to_string(endpoint.stage)) +
                   " failed after " + std::to_string(attempts) +
                   " attempts; last error: " + last_error);
}

}  // namespace virtfusion::pipeline
