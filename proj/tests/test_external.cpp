#include <gtest/gtest.h>

#include <chrono>
#include <string>

#include "ddgpce/error.hpp"
#include "ddgpce/external.hpp"

using namespace ddgpce;

namespace {

std::string script(const char* name) { return std::string(DDGPCE_TEST_DATA) + "/" + name; }

Eigen::MatrixXd inputs(Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd x(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) x(i, j) = 0.125 * (i + 1) - 0.5 * j;
  }
  return x;
}

std::string message_of(const ExternalModel& model, const Eigen::MatrixXd& x) {
  try {
    run_external_model(model, x);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ModelEvaluation);
    return e.what();
  }
  ADD_FAILURE() << "no error raised";
  return {};
}

}  // namespace

TEST(External, EchoesFirstColumn) {
  const Eigen::MatrixXd x = inputs(25, 3);
  const Eigen::VectorXd y = run_external_model({script("echo_first.sh")}, x);
  EXPECT_EQ(y, x.col(0));
}

TEST(External, SendsHeaderAndFullPrecision) {
  const Eigen::VectorXd ok = run_external_model({script("header_check.sh")}, inputs(4, 3));
  EXPECT_TRUE((ok.array() == 1.0).all());
  Eigen::MatrixXd x(2, 2);
  x << 0.1, 1.0 / 3.0, 1e-300, -2.5e7;
  const Eigen::VectorXd y = run_external_model({script("sum_columns.sh")}, x);
  EXPECT_DOUBLE_EQ(y(0), 0.1 + 1.0 / 3.0);
}

TEST(External, CountMismatch) {
  const auto msg = message_of({script("short.sh")}, inputs(10, 2));
  EXPECT_NE(msg.find("expected 10 values, got 9"), std::string::npos) << msg;
}

TEST(External, ExitCodeAndStderr) {
  const auto msg = message_of({script("exit3.sh")}, inputs(3, 2));
  EXPECT_NE(msg.find("exit code 3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("mesh generation failed"), std::string::npos) << msg;
}

TEST(External, MalformedLineNamesLineNumber) {
  const auto msg = message_of({script("garbage.sh")}, inputs(5, 2));
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
}

TEST(External, TimeoutKillsTheBatch) {
  const auto start = std::chrono::steady_clock::now();
  const auto msg = message_of({script("slow.sh"), 0.3}, inputs(2, 1));
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_NE(msg.find("timed out"), std::string::npos) << msg;
  EXPECT_LT(elapsed.count(), 3.0);
}

TEST(External, SpawnFailureAndAvailability) {
  EXPECT_TRUE(external_command_available(script("echo_first.sh")));
  EXPECT_TRUE(external_command_available("awk -F, '{print $1}'"));
  EXPECT_FALSE(external_command_available("/nonexistent/solver --flag"));
  EXPECT_FALSE(external_command_available(std::string(DDGPCE_TEST_DATA) + "/triangle.json"));
  const auto msg = message_of({"/nonexistent/solver"}, inputs(2, 1));
  EXPECT_FALSE(msg.empty());
}

TEST(External, BatchFunctionWrapper) {
  const BatchFunction f = external_function({script("sum_columns.sh")});
  const Eigen::MatrixXd x = inputs(7, 4);
  EXPECT_TRUE(f(x).isApprox(x.rowwise().sum(), 1e-15));
}
