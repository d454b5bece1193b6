// SPDX-License-Identifier: Apache-2.0
//
// dmtkit  MIMO outage and finite-SNR diversity-multiplexing analysis toolkit
// Copyright (C) 2026 the dmtkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// End-to-end tests of the installed binary through a shell, covering exit
// codes, output formats and the determinism contract. DMTKIT_BINARY is
// injected by the build system.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "dmt/sweep.hpp"

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string read_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    REQUIRE(static_cast<bool>(in));
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Scratch {
    Scratch()
    {
        dir = std::filesystem::temp_directory_path() / ("dmtkit-cli-" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
    }
    ~Scratch()
    {
        std::error_code ec;
        std::filesystem::remove_all(dir, ec);
    }
    std::filesystem::path dir;
};

// Runs `prefix dmtkit args` under /bin/sh with stdout/stderr captured.
RunResult run_cli(const Scratch &scratch, const std::string &args, const std::string &env_prefix = "")
{
    static int counter = 0;
    const std::filesystem::path out = scratch.dir / ("stdout." + std::to_string(counter));
    const std::filesystem::path err = scratch.dir / ("stderr." + std::to_string(counter));
    ++counter;

    std::string command = env_prefix;
    if (!command.empty())
        command += ' ';
    command += std::string("'") + DMTKIT_BINARY + "' " + args + " >'" + out.string() + "' 2>'" +
               err.string() + "'";

    RunResult result;
    const int status = std::system(command.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    result.code = WEXITSTATUS(status);
    result.out = read_file(out);
    result.err = read_file(err);
    return result;
}

} // namespace

TEST_CASE("cli: version and help")
{
    Scratch scratch;
    const RunResult version = run_cli(scratch, "--version");
    CHECK(version.code == 0);
    CHECK(version.out == "dmtkit 1.0.0\n");

    const RunResult help = run_cli(scratch, "--help");
    CHECK(help.code == 0);
    CHECK(help.out.find("sweep") != std::string::npos);
    CHECK(help.out.find("thresholds") != std::string::npos);
    CHECK(help.out.find("reproduce") != std::string::npos);
}

TEST_CASE("cli: usage errors exit with 1")
{
    Scratch scratch;
    CHECK(run_cli(scratch, "").code == 1);                    // missing subcommand
    CHECK(run_cli(scratch, "frobnicate").code == 1);          // unknown subcommand
    CHECK(run_cli(scratch, "sweep --no-mc").code == 1);       // no --csv/--json sink
    CHECK(run_cli(scratch, "sweep --csv - --def bogus").code == 1);
    CHECK(run_cli(scratch, "sweep --csv - --fixed-rate 1 --r 0.5").code == 1);  // exclusive
    CHECK(run_cli(scratch, "thresholds --n 2 --r 3").code == 1);                // r >= n
    CHECK(run_cli(scratch, "reproduce nope").code == 1);

    const RunResult unknown = run_cli(scratch, "reproduce nope");
    CHECK(unknown.err.find("unknown reproduction target") != std::string::npos);
}

TEST_CASE("cli: thresholds table in both formats")
{
    Scratch scratch;
    const RunResult text = run_cli(scratch, "thresholds --n 10 --r 9");
    CHECK(text.code == 0);
    CHECK(text.out.find("MEAN_FRACTION") != std::string::npos);
    CHECK(text.out.find("LOG_SNR_OFFSET") != std::string::npos);
    CHECK(text.out.find("note: LOG_SNR_OFFSET formula value 45.6 dB differs from the reported 50 dB") !=
          std::string::npos);

    const RunResult js = run_cli(scratch, "thresholds --n 10 --r 9 --json");
    CHECK(js.code == 0);
    const nlohmann::json parsed = nlohmann::json::parse(js.out);
    REQUIRE(parsed.size() == 3);
    CHECK(parsed[0].at("definition") == "mean-fraction");
    CHECK(parsed[0].at("threshold_linear") == 25.0);

    const RunResult one = run_cli(scratch, "thresholds --n 10 --r 9 --def log-snr --json");
    CHECK(one.code == 0);
    CHECK(nlohmann::json::parse(one.out).size() == 1);
}

TEST_CASE("cli: sweep to stdout emits exactly one parseable csv document")
{
    Scratch scratch;
    const RunResult result = run_cli(scratch, "sweep --csv - --no-mc");
    CHECK(result.code == 0);
    const auto rows = dmt::parse_curve_csv(result.out);
    CHECK(rows.size() == 31);  // default grid 0..30 dB step 1
    CHECK(rows.back().p_out_analytic.is_value());
}

TEST_CASE("cli: sweep json carries the reproduction metadata")
{
    Scratch scratch;
    const std::filesystem::path out = scratch.dir / "run.json";
    const RunResult result = run_cli(scratch,
                                     "sweep --json '" + out.string() +
                                         "' --no-mc --start-db 5 --stop-db 8 --seed 42 --trials 777");
    CHECK(result.code == 0);
    CHECK(result.out.find("wrote 4 rows to ") != std::string::npos);

    const nlohmann::json j = nlohmann::json::parse(read_file(out));
    CHECK(j.at("tool") == "dmtkit");
    CHECK(j.at("seed") == 42);
    CHECK(j.at("trials") == 777);
    CHECK(j.at("rows").size() == 4);
}

TEST_CASE("cli: sweep exit code 2 when every grid point is outside the domain")
{
    Scratch scratch;
    const RunResult result = run_cli(
        scratch, "sweep --csv '" + (scratch.dir / "dead.csv").string() +
                     "' --def log-snr --start-db -10 --stop-db -1 --no-mc");
    CHECK(result.code == 2);
    CHECK(result.err.find("domain rules rejected all 10 grid points") != std::string::npos);
    // The artifact is still written so the tags can be inspected.
    const auto rows = dmt::parse_curve_csv(read_file(scratch.dir / "dead.csv"));
    CHECK(rows.size() == 10);
    CHECK(rows[0].tags.find("rate-domain") != std::string::npos);
}

TEST_CASE("cli: identical bytes for reruns and for different worker counts")
{
    Scratch scratch;
    const std::string base =
        "sweep --m 2 --n 2 --start-db 5 --stop-db 10 --step-db 2.5 --trials 2000 --csv ";
    const std::filesystem::path a = scratch.dir / "a.csv";
    const std::filesystem::path b = scratch.dir / "b.csv";
    const std::filesystem::path c = scratch.dir / "c.csv";

    CHECK(run_cli(scratch, base + "'" + a.string() + "' --seed 9 --workers 1").code == 0);
    CHECK(run_cli(scratch, base + "'" + b.string() + "' --seed 9 --workers 1").code == 0);
    CHECK(run_cli(scratch, base + "'" + c.string() + "' --seed 9 --workers 4").code == 0);

    const std::string bytes_a = read_file(a);
    CHECK(bytes_a == read_file(b));
    CHECK(bytes_a == read_file(c));

    const std::filesystem::path d = scratch.dir / "d.csv";
    CHECK(run_cli(scratch, base + "'" + d.string() + "' --seed 10 --workers 1").code == 0);
    CHECK(bytes_a != read_file(d));
}

TEST_CASE("cli: config file supplies sweep keys and flags override it")
{
    Scratch scratch;
    const std::filesystem::path ini = scratch.dir / "job.ini";
    {
        std::ofstream out(ini);
        out << "[sweep]\n"
               "m=3\n"
               "n=3\n"
               "trials=500\n"
               "start-db=5\n"
               "stop-db=7\n";
    }
    const std::filesystem::path out_path = scratch.dir / "cfg.json";
    const RunResult result = run_cli(scratch, "--config '" + ini.string() + "' sweep --json '" +
                                                  out_path.string() + "' --no-mc --trials 700");
    CHECK(result.code == 0);
    const nlohmann::json j = nlohmann::json::parse(read_file(out_path));
    CHECK(j.at("config").at("channel").at("m") == 3);
    CHECK(j.at("config").at("channel").at("n") == 3);
    CHECK(j.at("config").at("grid").at("start_db") == 5.0);
    CHECK(j.at("trials") == 700);  // command line wins over the file

    // A bad value in the file is a usage error, not a crash.
    {
        std::ofstream out(ini);
        out << "[sweep]\nm=0\n";
    }
    CHECK(run_cli(scratch, "--config '" + ini.string() + "' sweep --csv - --no-mc").code == 1);
}

TEST_CASE("cli: relative outputs resolve against DMTKIT_OUTPUT_DIR")
{
    Scratch scratch;
    const RunResult result =
        run_cli(scratch, "sweep --csv rel.csv --no-mc --stop-db 3",
                "DMTKIT_OUTPUT_DIR='" + scratch.dir.string() + "'");
    CHECK(result.code == 0);
    CHECK(result.out.find((scratch.dir / "rel.csv").string()) != std::string::npos);
    CHECK(std::filesystem::exists(scratch.dir / "rel.csv"));
    CHECK(dmt::parse_curve_csv(read_file(scratch.dir / "rel.csv")).size() == 4);
}

TEST_CASE("cli: sweep --thresholds prints the table alongside the curve file")
{
    Scratch scratch;
    const std::filesystem::path out = scratch.dir / "t.csv";
    const RunResult result = run_cli(
        scratch, "sweep --csv '" + out.string() + "' --no-mc --stop-db 3 --thresholds --n 10 --m 10 --r 9");
    CHECK(result.code == 0);
    CHECK(result.out.find("definition") != std::string::npos);
    CHECK(result.out.find("LOG_SNR") != std::string::npos);
    CHECK(result.out.find("wrote 4 rows") != std::string::npos);

    // Not defined for rectangular or fixed-rate scenarios; says so instead.
    const RunResult rect = run_cli(
        scratch, "sweep --csv '" + out.string() + "' --no-mc --stop-db 3 --thresholds --m 2 --n 3");
    CHECK(rect.code == 0);
    CHECK(rect.err.find("square i.i.d. channel") != std::string::npos);
}

TEST_CASE("cli: reproduce writes artifacts and a truthful summary")
{
    Scratch scratch;
    const RunResult result =
        run_cli(scratch, "reproduce ex1 --output-dir '" + scratch.dir.string() + "'");
    CHECK(result.code == 0);
    CHECK(result.out.find("wrote ") != std::string::npos);
    CHECK(result.out.find("MEAN_FRACTION") != std::string::npos);
    CHECK(result.out.find("14 dB") != std::string::npos);
    CHECK(result.out.find("45.6") != std::string::npos);
    CHECK(result.out.find("50 dB") != std::string::npos);
    CHECK(result.out.find("121.6") != std::string::npos);
    CHECK(result.out.find("120 dB") != std::string::npos);

    const nlohmann::json j =
        nlohmann::json::parse(read_file(scratch.dir / "ex1-thresholds.json"));
    REQUIRE(j.size() == 3);
    CHECK(j[2].at("definition") == "log-snr");

    const RunResult ex2 = run_cli(scratch, "reproduce ex2 --output-dir '" + scratch.dir.string() + "'");
    CHECK(ex2.code == 0);
    CHECK(ex2.out.find("29.5") != std::string::npos);
    CHECK(ex2.out.find("22 dB") != std::string::npos);
    CHECK(ex2.out.find("both printed") != std::string::npos);
}
