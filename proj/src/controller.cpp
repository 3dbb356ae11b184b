#include "stratfuse/controller.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "stratfuse/errors.hpp"

namespace stratfuse::fsc {

namespace {

constexpr double kNormTolerance = 1e-9;

void check_normalized(std::span<const double> row, const char* what) {
  double sum = 0.0;
  for (double p : row) {
    if (p < 0.0 || !std::isfinite(p)) throw ConfigError(std::string(what) + ": bad probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kNormTolerance)
    throw ConfigError(std::string(what) + ": categorical does not sum to 1");
}

}  // namespace

void Controller::validate() const {
  if (nodes < 1 || actions < 1) throw ConfigError("Controller: empty dimensions");
  if (lambda.size() != static_cast<std::size_t>(nodes) * static_cast<std::size_t>(actions))
    throw ConfigError("Controller: lambda dimension mismatch");
  if (delta.size() != static_cast<std::size_t>(nodes) * ctf::kObservationCount *
                          static_cast<std::size_t>(nodes))
    throw ConfigError("Controller: delta dimension mismatch");
  for (int q = 0; q < nodes; ++q) check_normalized(lambda_row(q), "lambda");
  for (int q = 0; q < nodes; ++q)
    for (int o = 0; o < ctf::kObservationCount; ++o)
      check_normalized(delta_row(q, o), "delta");
}

Controller uniform_controller(int nodes, int actions) {
  if (nodes < 1 || actions < 1)
    throw ConfigError("uniform_controller: nodes and actions must be >= 1");
  Controller c;
  c.nodes = nodes;
  c.actions = actions;
  c.lambda.assign(static_cast<std::size_t>(nodes) * static_cast<std::size_t>(actions),
                  1.0 / actions);
  c.delta.assign(static_cast<std::size_t>(nodes) * ctf::kObservationCount *
                     static_cast<std::size_t>(nodes),
                 1.0 / nodes);
  return c;
}

int sample_action(const Controller& c, int node, rng::Stream& stream) {
  return static_cast<int>(stream.categorical(c.lambda_row(node)));
}

int next_node(const Controller& c, int node, int obs_index, rng::Stream& stream) {
  return static_cast<int>(stream.categorical(c.delta_row(node, obs_index)));
}

namespace {

void write_value(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

void write_block(std::ostream& out, std::span<const double> values, std::size_t width) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    write_value(out, values[i]);
    out << ((i + 1) % width == 0 ? '\n' : ' ');
  }
}

std::string next_token(std::istream& in) {
  std::string tok;
  if (!(in >> tok)) throw IoError("controller file: unexpected end of input");
  return tok;
}

void expect(std::istream& in, const std::string& literal) {
  std::string tok = next_token(in);
  if (tok != literal)
    throw IoError("controller file: expected '" + literal + "', got '" + tok + "'");
}

int read_int(std::istream& in) {
  std::string tok = next_token(in);
  try {
    return std::stoi(tok);
  } catch (...) {
    throw IoError("controller file: expected integer, got '" + tok + "'");
  }
}

double read_double(std::istream& in) {
  std::string tok = next_token(in);
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size())
    throw IoError("controller file: expected number, got '" + tok + "'");
  return v;
}

}  // namespace

void save_controller(std::ostream& out, const Controller& c) {
  out << "controller\n";
  out << "nodes " << c.nodes << "\n";
  out << "actions " << c.actions << "\n";
  out << "observations " << ctf::kObservationCount << "\n";
  out << "lambda\n";
  write_block(out, c.lambda, static_cast<std::size_t>(c.actions));
  out << "delta\n";
  write_block(out, c.delta, static_cast<std::size_t>(c.nodes));
}

Controller load_controller(std::istream& in) {
  expect(in, "controller");
  expect(in, "nodes");
  int nodes = read_int(in);
  expect(in, "actions");
  int actions = read_int(in);
  expect(in, "observations");
  int obs = read_int(in);
  if (obs != ctf::kObservationCount)
    throw IoError("controller file: unsupported observation count");
  if (nodes < 1 || actions < 1) throw IoError("controller file: bad dimensions");
  Controller c;
  c.nodes = nodes;
  c.actions = actions;
  c.lambda.resize(static_cast<std::size_t>(nodes) * static_cast<std::size_t>(actions));
  c.delta.resize(static_cast<std::size_t>(nodes) * ctf::kObservationCount *
                 static_cast<std::size_t>(nodes));
  expect(in, "lambda");
  for (double& v : c.lambda) v = read_double(in);
  expect(in, "delta");
  for (double& v : c.delta) v = read_double(in);
  c.validate();
  return c;
}

void save_team(const std::string& path, std::span<const Controller> team) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "stratagem-team 1\n";
  out << "agents " << team.size() << "\n";
  for (const Controller& c : team) save_controller(out, c);
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::vector<Controller> load_team(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  expect(in, "stratagem-team");
  int version = read_int(in);
  if (version != 1) throw IoError("unsupported stratagem-team version");
  expect(in, "agents");
  int agents = read_int(in);
  if (agents < 1) throw IoError("stratagem-team: bad agent count");
  std::vector<Controller> team;
  team.reserve(static_cast<std::size_t>(agents));
  for (int i = 0; i < agents; ++i) team.push_back(load_controller(in));
  return team;
}

}  // namespace stratfuse::fsc
