#pragma once

#include "qsw/channels.hpp"
#include "qsw/dfa.hpp"
#include "qsw/prep.hpp"
#include "qsw/qsync.hpp"

#include <json.hpp>

#include <complex>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qsw
{
	/// Raised for unreadable or unwritable files.
	class IoError : public std::runtime_error
	{
	public:
		using std::runtime_error::runtime_error;
	};

	/// 12 significant digits, shortest form, '.' separator regardless of locale.
	std::string format_real(double value);
	/// value rounded to 12 significant digits (what format_real prints).
	double round_to_printed(double value);
	/// Locale-independent strict parse of a whole string as a double.
	double parse_real(std::string_view text);

	/// "a", "bi", "a+bi", "a-bi", "i", "-i" with decimal or exponent notation.
	std::complex<double> parse_complex(std::string_view text);
	/// Three comma-separated amplitudes; no normalization.
	ComplexVec parse_amplitudes(std::string_view text);

	/// {"letters": {"A": {"type": "rot23_with_reset", "theta": ...},
	///              "B": {"type": "rot12", "phi": ...},
	///              "C": {"type": "phase", "alpha": ..., "beta": ...},
	///              "I": {"type": "identity"}}}
	QuantumAlphabet parse_alphabet_json(const nlohmann::json &doc);
	QuantumAlphabet load_alphabet_file(const std::filesystem::path &path);

	/// {"n_states": N, "letters": {"A": [images of 1..N], ...}}
	Dfa parse_dfa_json(const nlohmann::json &doc);
	Dfa load_dfa_file(const std::filesystem::path &path);
	nlohmann::ordered_json dfa_to_json(const Dfa &d);

	/// Header `theta,phi,overlap`; theta-major rows.
	void write_scan_csv(std::ostream &out, const ScanGrid &grid, const Eigen::MatrixXd &overlaps);

	/// `k,j,x,y,z` for real families, `l,k,j,re1,im1,re2,im2,re3,im3` for complex ones.
	void write_point_cloud_csv(std::ostream &out, const PrepFamily &family, const std::vector<FamilyMember> &members);

	struct CsvTable
	{
		std::vector<std::string> header;
		std::vector<std::vector<double>> rows;
	};

	/// Reads a numeric CSV with a header line; rows must match the header width.
	CsvTable read_csv(std::istream &in);

	nlohmann::ordered_json sync_report_json(const SyncReport &report, double theta, double phi);
	nlohmann::ordered_json compile_result_json(const CompileResult &result);
} // namespace qsw
