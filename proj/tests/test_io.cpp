#include "qsw/io.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <numbers>
#include <sstream>

using namespace qsw;
using qsw::test::Cplx;

TEST_CASE("format_real and round_to_printed")
{
	CHECK(format_real(0.5) == "0.5");
	CHECK(format_real(1.0) == "1");
	CHECK(format_real(std::numbers::pi) == "3.14159265359");
	CHECK(format_real(1e-20) == "1e-20");
	CHECK(format_real(-2.5e7) == "-25000000");
	CHECK(round_to_printed(std::numbers::pi) == 3.14159265359);

	std::mt19937_64 rng(1);
	for (int i = 0; i < 200; ++i)
	{
		const double v = test::uniform(rng, -1e3, 1e3);
		const double r = round_to_printed(v);
		CHECK(std::abs(r - v) <= 1e-11 * std::abs(v));
		CHECK(round_to_printed(r) == r);
		CHECK(format_real(parse_real(format_real(v))) == format_real(v));
	}
}

TEST_CASE("parse_real")
{
	CHECK(parse_real("1.5") == 1.5);
	CHECK(parse_real(" +2e-3 ") == 0.002);
	CHECK(parse_real("-7") == -7);
	CHECK_THROWS_AS(parse_real(""), ValidationError);
	CHECK_THROWS_AS(parse_real("1.5x"), ValidationError);
	CHECK_THROWS_AS(parse_real("1,5"), ValidationError);
}

TEST_CASE("parse_complex")
{
	CHECK(parse_complex("0.6") == Cplx(0.6, 0));
	CHECK(parse_complex("0.707i") == Cplx(0, 0.707));
	CHECK(parse_complex("-0.5i") == Cplx(0, -0.5));
	CHECK(parse_complex("0.8-0i") == Cplx(0.8, 0));
	CHECK(parse_complex("1+2i") == Cplx(1, 2));
	CHECK(parse_complex("-1-2i") == Cplx(-1, -2));
	CHECK(parse_complex("1e-3+2e+1i") == Cplx(1e-3, 20));
	CHECK(parse_complex("1e-3-2E-1i") == Cplx(1e-3, -0.2));
	CHECK(parse_complex("i") == Cplx(0, 1));
	CHECK(parse_complex("-i") == Cplx(0, -1));
	CHECK(parse_complex("2+i") == Cplx(2, 1));
	CHECK_THROWS_AS(parse_complex(""), ValidationError);
	CHECK_THROWS_AS(parse_complex("abc"), ValidationError);
	CHECK_THROWS_AS(parse_complex("1+2j"), ValidationError);
}

TEST_CASE("parse_amplitudes")
{
	const auto v = parse_amplitudes("0,0.707i,0.707");
	CHECK(v(0) == Cplx(0));
	CHECK(v(1) == Cplx(0, 0.707));
	CHECK(v(2) == Cplx(0.707));
	CHECK_THROWS_AS(parse_amplitudes("1,0"), ValidationError);
	CHECK_THROWS_AS(parse_amplitudes("1,0,0,0"), ValidationError);
	CHECK_THROWS_AS(parse_amplitudes("1,,0"), ValidationError);
}

TEST_CASE("parse_alphabet_json")
{
	const auto doc = nlohmann::json::parse(R"({"letters": {
		"A": {"type": "rot23_with_reset", "theta": 0.3},
		"B": {"type": "rot12", "phi": 0.4},
		"C": {"type": "phase", "alpha": 0.1, "beta": 0.2},
		"I": {"type": "identity"}}})");
	const auto a = parse_alphabet_json(doc);
	CHECK(a.letter_names() == "ABCI");
	CHECK((a.at('A').kraus_ops()[1] - make_channel_A(0.3).kraus_ops()[1]).norm() == 0.0);
	CHECK((a.at('B').kraus_ops()[0] - make_channel_B(0.4).kraus_ops()[0]).norm() == 0.0);
	CHECK((a.at('C').kraus_ops()[0] - make_channel_C(0.1, 0.2).kraus_ops()[0]).norm() == 0.0);
	CHECK(a.at('I').kraus_ops()[0] == ComplexMat::Identity());

	using nlohmann::json;
	CHECK_THROWS_AS(parse_alphabet_json(json::parse(R"({})")), ValidationError);
	CHECK_THROWS_AS(parse_alphabet_json(json::parse(R"({"letters": {}})")), ValidationError);
	CHECK_THROWS_AS(parse_alphabet_json(json::parse(R"({"letters": {"AB": {"type": "identity"}}})")), ValidationError);
	CHECK_THROWS_AS(parse_alphabet_json(json::parse(R"({"letters": {"A": {"type": "unknown"}}})")), ValidationError);
	CHECK_THROWS_AS(parse_alphabet_json(json::parse(R"({"letters": {"A": {"type": "rot12"}}})")), ValidationError);
	CHECK_THROWS_AS(parse_alphabet_json(json::parse(R"({"letters": {"A": {"type": "rot12", "phi": "x"}}})")),
					ValidationError);
}

TEST_CASE("parse_dfa_json and round trip")
{
	const auto d = parse_dfa_json(nlohmann::json::parse(R"({"n_states": 3, "letters": {"A": [2, 3, 1], "B": [2, 1, 1]}})"));
	CHECK(d.n_states() == 3);
	CHECK(is_synchronizing(d, "BAB").state == 1);
	const auto again = parse_dfa_json(nlohmann::json::parse(dfa_to_json(d).dump()));
	CHECK(again.image_table('A') == d.image_table('A'));
	CHECK(again.image_table('B') == d.image_table('B'));
	CHECK(dfa_to_json(d).dump() == R"({"n_states":3,"letters":{"A":[2,3,1],"B":[2,1,1]}})");

	using nlohmann::json;
	CHECK_THROWS_AS(parse_dfa_json(json::parse(R"({"letters": {"A": [1]}})")), ValidationError);
	CHECK_THROWS_AS(parse_dfa_json(json::parse(R"({"n_states": 2})")), ValidationError);
	CHECK_THROWS_AS(parse_dfa_json(json::parse(R"({"n_states": 2, "letters": {"A": [1, 1.5]}})")), ValidationError);
	CHECK_THROWS_AS(parse_dfa_json(json::parse(R"({"n_states": 2, "letters": {"A": [1, 3]}})")), ValidationError);
}

TEST_CASE("file loaders")
{
	CHECK_THROWS_AS(load_dfa_file("/nonexistent/dfa.json"), IoError);
	CHECK_THROWS_AS(load_alphabet_file("/nonexistent/alphabet.json"), IoError);
}

TEST_CASE("scan CSV round trip")
{
	ScanGrid grid;
	grid.theta_values = linspace(0.4, 0.6, 4);
	grid.phi_values = linspace(1.0, 1.2, 3);
	const auto overlaps = scan_overlap(grid, PureState::basis(2));
	std::stringstream ss;
	write_scan_csv(ss, grid, overlaps);
	const auto table = read_csv(ss);
	CHECK(table.header == std::vector<std::string>{"theta", "phi", "overlap"});
	REQUIRE(table.rows.size() == 12);
	for (int i = 0; i < 4; ++i)
		for (int j = 0; j < 3; ++j)
		{
			const auto &row = table.rows[i * 3 + j];
			CHECK(row[0] == round_to_printed(grid.theta_values[i]));
			CHECK(row[1] == round_to_printed(grid.phi_values[j]));
			CHECK(row[2] == round_to_printed(overlaps(i, j)));
		}

	std::stringstream wrong;
	CHECK_THROWS_AS(write_scan_csv(wrong, grid, Eigen::MatrixXd::Zero(2, 2)), ValidationError);
}

TEST_CASE("point cloud CSV")
{
	const PrepFamily real{0.3, 0.4, std::nullopt, 3};
	std::stringstream ss;
	write_point_cloud_csv(ss, real, generate_family(real));
	const auto table = read_csv(ss);
	CHECK(table.header == std::vector<std::string>{"k", "j", "x", "y", "z"});
	REQUIRE(table.rows.size() == 9);
	for (const auto &row : table.rows)
		CHECK(std::abs(std::hypot(row[2], row[3], row[4]) - 1) < 1e-11);

	const PrepFamily cplx{0.3, 0.4, PhaseAngles{0.5, 0.6}, 2};
	std::stringstream cs;
	write_point_cloud_csv(cs, cplx, generate_family(cplx));
	const auto ct = read_csv(cs);
	CHECK(ct.header.size() == 9);
	CHECK(ct.rows.size() == 8);
}

TEST_CASE("read_csv errors")
{
	std::stringstream empty;
	CHECK_THROWS_AS(read_csv(empty), ValidationError);
	std::stringstream ragged("a,b\n1,2\n3\n");
	CHECK_THROWS_AS(read_csv(ragged), ValidationError);
}

TEST_CASE("JSON reports use printed precision")
{
	const auto ab = std::make_shared<const QuantumAlphabet>(make_standard_alphabet(1.4137, 1.4137));
	const auto report = make_sync_report(QuantumWord("ABA", ab), PureState::basis(2));
	const auto doc = sync_report_json(report, 1.4137, 1.4137);
	CHECK(doc["word"] == "ABA");
	CHECK(doc["theta"].get<double>() == 1.4137);
	CHECK(doc["worst_case_fidelity"].get<double>() == round_to_printed(report.worst_case_fidelity));
	CHECK(doc.dump().find("mixed_state_fidelity") != std::string::npos);
}
