#include "qsw/io.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace
{
	struct RunResult
	{
		int exit_code;
		std::string out;
	};

	RunResult run(const std::string &args)
	{
		const std::string cmd = std::string("\"") + QSW_CLI_PATH + "\" " + args + " 2>/dev/null";
		FILE *pipe = popen(cmd.c_str(), "r");
		REQUIRE(pipe != nullptr);
		std::string out;
		char buf[4096];
		while (const std::size_t n = fread(buf, 1, sizeof buf, pipe))
			out.append(buf, n);
		const int status = pclose(pipe);
		return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
	}

	nlohmann::json run_json(const std::string &args)
	{
		const auto r = run(args);
		REQUIRE(r.exit_code == 0);
		return nlohmann::json::parse(r.out);
	}

	qsw::CsvTable run_csv(const std::string &args)
	{
		const auto r = run(args);
		REQUIRE(r.exit_code == 0);
		std::istringstream in(r.out);
		return qsw::read_csv(in);
	}

	std::string data(const std::string &name) { return std::string("\"") + QSW_DATA_DIR + "/" + name + "\""; }
} // namespace

TEST_CASE("sync-check")
{
	const auto exact = run_json("sync-check --theta 0.5 --phi 0.5 --pi-units --word ABA");
	CHECK(exact["word"] == "ABA");
	CHECK(exact["worst_case_fidelity"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
	CHECK(exact["mixed_state_fidelity"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));

	const auto defaults = run_json("sync-check");
	CHECK(defaults["theta"].get<double>() == qsw::round_to_printed(std::numbers::pi / 2));

	const auto near = run_json("sync-check --theta 1.4137 --phi 1.4137");
	CHECK(near["mixed_state_fidelity"].get<double>() > 0.975);
	CHECK(near["worst_case_fidelity"].get<double>() <= near["mixed_state_fidelity"].get<double>());

	CHECK(run_json("sync-check --word B")["worst_case_fidelity"].get<double>() == 0.0);
	CHECK(run_json("sync-check --alphabet " + data("right_angle_alphabet.json"))["worst_case_fidelity"].get<double>()
		  == doctest::Approx(1.0));

	CHECK(run("sync-check --word \"\"").exit_code == 2);
	CHECK(run("sync-check --word ABX").exit_code == 2);
	CHECK(run("sync-check --word ABC").exit_code == 2);
	CHECK(run("sync-check --word ABC --alpha 0.1").exit_code == 2);
	CHECK(run("sync-check --word ABAC --alpha 0.1 --beta 0.2").exit_code == 0);
	CHECK(run("sync-check --theta nan").exit_code == 2);
	CHECK(run("sync-check --theta abc").exit_code == 2);
	CHECK(run("sync-check --alphabet /nonexistent.json").exit_code == 3);
	CHECK(run("").exit_code == 2);
	CHECK(run("--help").exit_code == 0);
}

TEST_CASE("scan")
{
	const auto table = run_csv("scan --steps 5");
	CHECK(table.header == std::vector<std::string>{"theta", "phi", "overlap"});
	REQUIRE(table.rows.size() == 25);
	CHECK(table.rows.front()[0] == qsw::round_to_printed(0.4 * std::numbers::pi));
	CHECK(table.rows.back()[1] == qsw::round_to_printed(0.6 * std::numbers::pi));
	// Centre of the default window is theta = phi = pi/2.
	CHECK(table.rows[12][2] == doctest::Approx(1.0).epsilon(1e-12));

	const auto first = run("scan --steps 11 --initial worst");
	const auto second = run("scan --steps 11 --initial worst");
	CHECK(first.exit_code == 0);
	CHECK(first.out == second.out);

	const auto small = run_csv("scan --steps 2 --theta-min 0.5 --theta-max 0.5 --phi-min 0 --phi-max 0 --pi-units");
	REQUIRE(small.rows.size() == 4);
	CHECK(small.rows[0][2] == doctest::Approx(1.0 / 3));

	CHECK(run_csv("scan --steps 3 --initial basis:2").rows.size() == 9);
	CHECK(run("scan --steps 1").exit_code == 2);
	CHECK(run("scan --initial basis:4").exit_code == 2);
	CHECK(run("scan --word AXA").exit_code == 2);
}

TEST_CASE("dfa and cerny")
{
	const auto check = run_json("dfa --file " + data("bab_automaton.json") + " --check BAB");
	CHECK(check["synchronizing"] == true);
	CHECK(check["state"] == 1);

	const auto no = run_json("dfa --file " + data("bab_automaton.json") + " --check B");
	CHECK(no["synchronizing"] == false);
	CHECK(no["state"].is_null());

	const auto shortest = run_json("dfa --file " + data("bab_automaton.json") + " --shortest");
	CHECK(shortest["word_length"] == 3);

	const auto cerny4 = run_json("dfa --file " + data("cerny4.json") + " --shortest");
	CHECK(cerny4["word_length"] == 9);

	const auto perm = run_json("dfa --file " + data("permutation_automaton.json") + " --shortest");
	CHECK(perm["word"].is_null());
	CHECK(run_json("dfa --file " + data("permutation_automaton.json") + " --greedy")["word"].is_null());

	const auto c5 = run_json("cerny 5");
	CHECK(c5["n"] == 5);
	CHECK(c5["exact"] == true);
	CHECK(c5["word_length"] == 16);
	CHECK(run_json("dfa --cerny 3")["word_length"] == 4);

	const auto c30 = run_json("cerny --n 30");
	CHECK(c30["exact"] == false);
	CHECK(c30["word_length"].get<int>() >= 841);

	CHECK(run("dfa --file " + data("bab_automaton.json")).exit_code == 2);
	CHECK(run("dfa --file " + data("bab_automaton.json") + " --shortest --greedy").exit_code == 2);
	CHECK(run("dfa --file " + data("bab_automaton.json") + " --check BXB").exit_code == 2);
	CHECK(run("dfa --file /nonexistent.json --shortest").exit_code == 3);
	CHECK(run("cerny 1").exit_code == 2);
}

TEST_CASE("states")
{
	const auto one = run_csv("states --n 1");
	REQUIRE(one.rows.size() == 1);
	CHECK(one.rows[0] == std::vector<double>{0, 0, 0, 1, 0});

	const auto full = run_csv("states");
	CHECK(full.header == std::vector<std::string>{"k", "j", "x", "y", "z"});
	REQUIRE(full.rows.size() == 101u * 101u);
	for (const auto &row : full.rows)
		CHECK(std::abs(std::hypot(row[2], row[3], row[4]) - 1) < 1e-9);

	const auto complex_cloud = run_csv("states --n 3 --alpha 0.3 --beta 0.7");
	CHECK(complex_cloud.header.size() == 9);
	CHECK(complex_cloud.rows.size() == 27);

	CHECK(run("states --n 0").exit_code == 2);
	CHECK(run("states --n 1001").exit_code == 2);
	CHECK(run("states --alpha 0.3").exit_code == 2);
}

TEST_CASE("prepare")
{
	const auto uniform = run_json("prepare --target 0.57735026919,0.57735026919,0.57735026919");
	CHECK(uniform["word"].get<std::string>().substr(0, 3) == "ABA");
	CHECK(uniform["k"] == 19);
	CHECK(uniform["j"] == 99);
	CHECK(uniform["l"] == 0);
	CHECK(uniform["predicted_fidelity"].get<double>() >= 0.99);

	const auto basis = run_json("prepare --target 0,1,0");
	CHECK(basis["word"] == "ABA");
	CHECK(basis["predicted_fidelity"].get<double>() == 1.0);

	const auto phased = run_json("prepare --target 0,0.707i,0.707 --alpha 0.9 --beta 1.7 --n 30");
	CHECK(phased["predicted_fidelity"].get<double>() > 0.9);

	CHECK(run("prepare --target 0,0.707i,0.707").exit_code == 2);
	CHECK(run("prepare --target 1,1,0").exit_code == 2);
	CHECK(run("prepare --target 1,0").exit_code == 2);
	CHECK(run("prepare").exit_code == 2);
	CHECK(run("prepare --target 0,1,0 --out /nonexistent/dir/out.json").exit_code == 3);

	const auto path = std::filesystem::temp_directory_path() / "qsw_cli_prepare.json";
	REQUIRE(run("prepare --target 0,1,0 --out \"" + path.string() + "\"").exit_code == 0);
	std::ifstream in(path);
	CHECK(nlohmann::json::parse(in)["word"] == "ABA");
	std::filesystem::remove(path);
}
