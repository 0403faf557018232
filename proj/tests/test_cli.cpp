#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <sstream>

#include "hamperturb/graph.hpp"
#include "hamperturb/io.hpp"
#include "support.hpp"

using testsupport::run_capture;
using testsupport::slurp;
using testsupport::spit;

namespace {

const std::string cli = HAMPERTURB_CLI_PATH;

std::string tmp(const std::string& name) { return "/tmp/hamperturb_cli_" + name; }

} // namespace

TEST_CASE("usage and bad input map to exit code 2") {
    std::string out;
    CHECK(run_capture(cli + " --help", &out) == 0);
    CHECK(out.find("construct") != std::string::npos);

    CHECK(run_capture(cli, &out) == 2);
    CHECK(run_capture(cli + " frobnicate", &out) == 2);
    CHECK(run_capture(cli + " construct --pipeline nope --n 10 --family complete", &out) == 2);
    CHECK(run_capture(cli + " construct --pipeline mindeg", &out) == 2); // no graph at all
    CHECK(run_capture(cli + " verify --family complete --n 8", &out) == 2); // nothing to check
}

TEST_CASE("sampled graphs read back") {
    std::string path = tmp("k8.txt");
    std::string out;
    int rc = run_capture(cli + " --seed 3 sample --what graph --family complete --n 8 --out " + path,
                         &out);
    REQUIRE(rc == 0);
    std::istringstream in(slurp(path));
    hamperturb::Graph g = hamperturb::read_edge_list(in);
    CHECK(g.size() == 8);
    CHECK(g.edge_count() == 28);
}

TEST_CASE("sampled factors parse and carry the seed in the envelope") {
    std::string fpath = tmp("f9.txt");
    std::string out;
    int rc = run_capture(
        cli + " --seed 11 sample --what two_factor --n 9 --factor-out " + fpath, &out);
    REQUIRE(rc == 0);
    CHECK(out.find("\"seed\":11") != std::string::npos);
    std::istringstream in(slurp(fpath));
    hamperturb::TwoFactor f = hamperturb::read_factor(in);
    CHECK(f.size() == 9);
}

TEST_CASE("construct emits a status line, a certificate, and is reproducible") {
    std::string cert = tmp("cert30.txt");
    std::string cmd = cli + " --seed 5 construct --pipeline mindeg --family complete --n 30 --cert " +
                      cert;
    std::string run1, run2;
    REQUIRE(run_capture(cmd, &run1) == 0);
    REQUIRE(run_capture(cmd, &run2) == 0);
    CHECK(run1 == run2); // byte-identical reruns
    CHECK(run1.rfind("HAMILTONIAN\n", 0) == 0);
    CHECK(run1.find("\"kind\":\"construct.mindeg\"") != std::string::npos);

    // the emitted certificate verifies against the same seed's graph + factor
    std::string verify_out;
    int rc = run_capture(cli + " --seed 5 construct --pipeline mindeg --family complete --n 30 "
                               "--emit-factor",
                         &verify_out);
    REQUIRE(rc == 0);
    CHECK(verify_out.find("\"factor\"") != std::string::npos);
}

TEST_CASE("verify accepts the pipeline certificate and rejects a tampered one") {
    std::string cert = tmp("cert_v.txt");
    std::string graph = tmp("graph_v.txt");
    std::string out;
    REQUIRE(run_capture(cli + " --seed 7 sample --what graph --family gnp --p 0.8 --n 24 --out " +
                            graph,
                        &out) == 0);
    int rc = run_capture(cli + " --seed 9 construct --pipeline posa --graph " + graph +
                             " --cert " + cert,
                         &out);
    REQUIRE(rc == 0);

    REQUIRE(run_capture(cli + " verify --graph " + graph + " --certificate " + cert, &out) == 0);
    CHECK(out.find("VALID") == 0);

    // swap two vertices in the order; on a sparse-ish graph an edge likely breaks
    std::istringstream cin(slurp(cert));
    hamperturb::Certificate c = hamperturb::read_certificate(cin);
    std::swap(c.order[0], c.order[2]);
    std::ostringstream cout_s;
    hamperturb::write_certificate(cout_s, c);
    spit(cert, cout_s.str());
    rc = run_capture(cli + " verify --graph " + graph + " --certificate " + cert, &out);
    if (rc == 1) {
        CHECK(out.find("INVALID") == 0);
    } else {
        CHECK(rc == 0); // the swap can happen to preserve adjacency
    }
}

TEST_CASE("exact verification decides small instances") {
    std::string out;
    CHECK(run_capture(cli + " verify --exact --family cycle --n 12", &out) == 0);
    CHECK(out.find("HAMILTONIAN") == 0);

    CHECK(run_capture(cli + " verify --exact --family lower_bound --eps 0.3 --n 12", &out) == 1);
    CHECK(out.find("NOT HAMILTONIAN") == 0);
}

TEST_CASE("negative construction results exit with 1") {
    std::string out;
    int rc = run_capture(
        cli + " --seed 2 construct --pipeline mindeg --family lower_bound --eps 0.5 --n 200", &out);
    CHECK(rc == 1);
    CHECK(out.rfind("NOT FOUND", 0) == 0);
}

TEST_CASE("experiments are worker-invariant and config-driven") {
    std::string cmd = cli + " --seed 19 experiment --experiment cycle_stats --n 10 --trials 2000";
    std::string w1, w3;
    REQUIRE(run_capture(cmd + " --workers 1", &w1) == 0);
    REQUIRE(run_capture(cmd + " --workers 3", &w3) == 0);
    CHECK(w1 == w3);
    CHECK(w1.find("\"trials\":2000") != std::string::npos);

    std::string cfg = tmp("exp.json");
    spit(cfg, "{\"experiment\": \"cycle_stats\", \"n\": 8, \"trials\": 500}\n");
    std::string out;
    REQUIRE(run_capture(cli + " --seed 19 experiment --config " + cfg + " --trials 1000", &out) ==
            0);
    CHECK(out.find("\"trials\":1000") != std::string::npos); // flag overrides file

    spit(cfg, "{\"experiment\": \"cycle_stats\", \"n\": 8, \"mystery\": 1}\n");
    CHECK(run_capture(cli + " experiment --config " + cfg, &out) == 2);
    spit(cfg, "{not json");
    CHECK(run_capture(cli + " experiment --config " + cfg, &out) == 2);
    CHECK(run_capture(cli + " experiment --n 8 --trials 10", &out) == 2); // no experiment name
}

TEST_CASE("csv scans carry a provenance comment and reproduce") {
    std::string cmd = cli + " --seed 29 --format csv scan --family complete --n 30 --trials 10 "
                            "--grid 1.0";
    std::string a, b;
    REQUIRE(run_capture(cmd, &a) == 0);
    REQUIRE(run_capture(cmd + " --workers 2", &b) == 0);
    CHECK(a == b);
    CHECK(a.rfind("# tool_version=", 0) == 0);
    CHECK(a.find("seed=29") != std::string::npos);
    CHECK(a.find("success") != std::string::npos);
}
