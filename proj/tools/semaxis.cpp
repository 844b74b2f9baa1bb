// semaxis: operator CLI for the semantic-axis analysis service.
//
//   semaxis serve --port 8080 --data-dir ./session
//   semaxis ingest scores.csv --normalization zscore
//   semaxis fixtures --out ./fixtures
//   semaxis embed scores.csv --normalization zscore --algorithm tsne --seed 3
//   semaxis rank institutions.csv --period-column period --period all

#include "semaxis/dataset.hpp"
#include "semaxis/embedding.hpp"
#include "semaxis/fixtures.hpp"
#include "semaxis/http_api.hpp"
#include "semaxis/ranking.hpp"
#include "semaxis/session.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace semaxis;

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void emit(const std::string& content, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << content;
    return;
  }
  std::ofstream os(out, std::ios::binary);
  if (!os) throw Error(ErrorCode::Io, "cannot write " + out);
  os << content;
}

struct TableInput {
  std::string path;
  std::string normalization = "raw";
  std::string id_column;
  std::string period_column;
  std::string delimiter = ",";
  std::vector<double> weights;

  void add_to(CLI::App* cmd) {
    cmd->add_option("csv", path, "input table ('-' for stdin)")->required();
    cmd->add_option("--normalization", normalization, "raw | zscore | minmax")->capture_default_str();
    cmd->add_option("--id-column", id_column, "id column name (default: first column)");
    cmd->add_option("--period-column", period_column, "period column for long-format time slices");
    cmd->add_option("--delimiter", delimiter, "field delimiter")->capture_default_str();
    cmd->add_option("--weights", weights, "attribute weights (must sum to 1; default uniform)")->delimiter(',');
  }

  CsvOptions options() const {
    CsvOptions o;
    o.id_column = id_column;
    o.period_column = period_column;
    o.delimiter = delimiter.empty() ? ',' : delimiter.front();
    return o;
  }

  Dataset load() const {
    return normalize(load_csv(read_input(path), options()), normalization_from_string(normalization));
  }

  WeightVector weight_vector(const Dataset& d) const {
    if (weights.empty()) return WeightVector::uniform(d.dims());
    Vector w = Eigen::Map<const Vector>(weights.data(), static_cast<Index>(weights.size()));
    if (w.size() != d.dims()) throw Error(ErrorCode::DimensionMismatch, "--weights needs one value per attribute");
    return WeightVector(w);
  }
};

httplib::Server* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic-axis exploration of multi-attribute data"};
  app.require_subcommand(1);

  // serve
  auto* serve = app.add_subcommand("serve", "run the HTTP JSON API");
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_dir = "semaxis-session";
  std::size_t slots = 4;
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port, "0 picks a free port")->capture_default_str();
  serve->add_option("--data-dir", data_dir, "session directory")->capture_default_str();
  serve->add_option("--slots", slots, "saved-axis slots")->capture_default_str();

  // ingest
  auto* ingest = app.add_subcommand("ingest", "validate a table and optionally add it to a session");
  TableInput ingest_in;
  ingest_in.add_to(ingest);
  std::string ingest_dir;
  ingest->add_option("--data-dir", ingest_dir, "session directory to add the dataset to");

  // fixtures
  auto* fixtures = app.add_subcommand("fixtures", "write the synthetic student and institution datasets");
  std::string fixture_dir = "fixtures";
  Index students = 500;
  Index institutions = 495;
  fixtures->add_option("--out", fixture_dir, "output directory")->capture_default_str();
  fixtures->add_option("--students", students)->capture_default_str();
  fixtures->add_option("--institutions", institutions)->capture_default_str();

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "compute a 2-D embedding and print id,x,y");
  TableInput embed_in;
  embed_in.add_to(embed_cmd);
  EmbeddingConfig cfg;
  std::string algorithm = "tsne";
  std::string embed_out;
  embed_cmd->add_option("--algorithm", algorithm, "tsne | pca")->capture_default_str();
  embed_cmd->add_option("--perplexity", cfg.perplexity)->capture_default_str();
  embed_cmd->add_option("--iterations", cfg.iterations)->capture_default_str();
  embed_cmd->add_option("--learning-rate", cfg.learning_rate)->capture_default_str();
  embed_cmd->add_option("--seed", cfg.seed)->capture_default_str();
  embed_cmd->add_option("-o,--out", embed_out, "output file (default stdout)");

  // rank
  auto* rank = app.add_subcommand("rank", "weighted ranking as rank,id,score (or period,rank,id,score)");
  TableInput rank_in;
  rank_in.add_to(rank);
  std::string periods;
  std::string rank_out;
  rank->add_option("--period", periods, "'all' or a comma-separated list of period labels");
  rank->add_option("-o,--out", rank_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) {
      Session session(SessionConfig{data_dir, slots});
      httplib::Server server;
      register_routes(server, session);
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      int bound = port;
      if (port == 0) {
        bound = server.bind_to_any_port(host);
      } else if (!server.bind_to_port(host, port)) {
        bound = -1;
      }
      if (bound < 0) {
        std::cerr << "cannot bind " << host << ":" << port << "\n";
        return 1;
      }
      std::cout << "listening on " << host << ":" << bound << std::endl;
      server.listen_after_bind();
      return 0;
    }
    if (*ingest) {
      const Dataset d = ingest_in.load();
      Json summary = {{"n", d.size()},
                      {"d", d.dims()},
                      {"attributes", d.attributes()},
                      {"normalization", std::string(to_string(d.normalization()))}};
      if (!ingest_dir.empty()) {
        Session session(SessionConfig{ingest_dir});
        const auto info = session.add_dataset(read_input(ingest_in.path), ingest_in.options(),
                                              normalization_from_string(ingest_in.normalization));
        summary["dataset_id"] = info.id;
      }
      std::cout << summary.dump(2) << "\n";
      return 0;
    }
    if (*fixtures) {
      fs::create_directories(fixture_dir);
      const auto st = make_student_fixture(students);
      const auto inst = make_institution_fixture(institutions);
      emit(st.csv, (fs::path(fixture_dir) / "students.csv").string());
      emit(st.truth.dump(2) + "\n", (fs::path(fixture_dir) / "students_truth.json").string());
      emit(inst.csv, (fs::path(fixture_dir) / "institutions.csv").string());
      emit(inst.truth.dump(2) + "\n", (fs::path(fixture_dir) / "institutions_truth.json").string());
      std::cout << "wrote fixtures to " << fixture_dir << "\n";
      return 0;
    }
    if (*embed_cmd) {
      cfg.algorithm = algorithm_from_string(algorithm);
      const Dataset d = embed_in.load();
      const Embedding e = embed(weighted_matrix(d, embed_in.weight_vector(d)), cfg);
      emit(embedding_table(d.ids(), e.coords), embed_out);
      return 0;
    }
    if (*rank) {
      const Dataset d = rank_in.load();
      const WeightVector w = rank_in.weight_vector(d);
      if (periods.empty()) {
        emit(ranking_table(weighted_ranking(d, w)), rank_out);
      } else {
        std::vector<std::string> labels;
        if (periods != "all") {
          std::stringstream ss(periods);
          for (std::string p; std::getline(ss, p, ',');) labels.push_back(p);
        }
        emit(sliced_ranking_table(time_sliced_ranking(d, w, labels)), rank_out);
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
