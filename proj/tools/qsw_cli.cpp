// qsw: reset checks, overlap scans, classical synchronizing words, state
// families and target compilation for the two-channel qutrit alphabet.

#include "qsw/io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

namespace
{
	constexpr int kExitUsage = 2;
	constexpr int kExitIo = 3;

	struct CommonOptions
	{
		std::string out;
		std::uint64_t seed = 42;
		bool pi_units = false;

		double angle(double value) const { return pi_units ? value * std::numbers::pi : value; }
		std::optional<double> angle(const std::optional<double> &value) const
		{
			return value ? std::optional<double>(angle(*value)) : std::nullopt;
		}
	};

	class UsageError : public std::runtime_error
	{
	public:
		using std::runtime_error::runtime_error;
	};

	/// Buffers output and writes it in one go to --out or stdout.
	void emit(const CommonOptions &common, const std::string &text)
	{
		if (common.out.empty() || common.out == "-")
		{
			std::cout << text;
			std::cout.flush();
			return;
		}
		std::ofstream file(common.out, std::ios::binary | std::ios::trunc);
		if (!file)
			throw qsw::IoError("cannot open output file " + common.out);
		file << text;
		if (!file.flush())
			throw qsw::IoError("failed writing output file " + common.out);
	}

	std::optional<qsw::PhaseAngles> phase_from(const std::optional<double> &alpha, const std::optional<double> &beta)
	{
		if (alpha.has_value() != beta.has_value())
			throw UsageError("--alpha and --beta must be given together");
		if (!alpha)
			return std::nullopt;
		return qsw::PhaseAngles{*alpha, *beta};
	}

	void require_finite(double v, const char *name)
	{
		if (!std::isfinite(v))
			throw UsageError(std::string(name) + " must be finite");
	}

	// sync-check ---------------------------------------------------------------

	struct SyncCheckOptions
	{
		double theta = std::numbers::pi / 2;
		double phi = std::numbers::pi / 2;
		std::optional<double> alpha, beta;
		std::string word = "ABA";
		std::string alphabet_file;
	};

	int run_sync_check(const CommonOptions &common, const SyncCheckOptions &opt, bool theta_given, bool phi_given)
	{
		if (opt.word.empty())
			throw UsageError("--word must be a non-empty string over {A, B, C}");
		for (char c : opt.word)
			if (c != 'A' && c != 'B' && c != 'C')
				throw UsageError(std::string("--word contains '") + c + "'; letters must be A, B or C");

		const double theta = theta_given ? common.angle(opt.theta) : opt.theta;
		const double phi = phi_given ? common.angle(opt.phi) : opt.phi;
		require_finite(theta, "--theta");
		require_finite(phi, "--phi");
		const auto phase = phase_from(common.angle(opt.alpha), common.angle(opt.beta));

		std::shared_ptr<const qsw::QuantumAlphabet> alphabet;
		if (!opt.alphabet_file.empty())
			alphabet = std::make_shared<const qsw::QuantumAlphabet>(qsw::load_alphabet_file(opt.alphabet_file));
		else
		{
			if (opt.word.find('C') != std::string::npos && !phase)
				throw UsageError("--word uses the phase gate C; give --alpha and --beta");
			alphabet = std::make_shared<const qsw::QuantumAlphabet>(qsw::make_standard_alphabet(theta, phi, phase));
		}

		const qsw::QuantumWord word(opt.word, alphabet);
		const auto report = qsw::make_sync_report(word, qsw::PureState::basis(2));
		emit(common, qsw::sync_report_json(report, theta, phi).dump() + "\n");
		return 0;
	}

	// scan ---------------------------------------------------------------------

	struct ScanOptions
	{
		double theta_min = 0.4 * std::numbers::pi, theta_max = 0.6 * std::numbers::pi;
		double phi_min = 0.4 * std::numbers::pi, phi_max = 0.6 * std::numbers::pi;
		int steps = 101;
		std::string word = "ABA";
		std::string initial = "mixed";
	};

	qsw::InitialStateSpec parse_initial(const std::string &text)
	{
		if (text == "mixed")
			return qsw::InitialStateSpec::maximally_mixed();
		if (text == "worst")
			return qsw::InitialStateSpec::worst_case();
		if (text.rfind("basis:", 0) == 0)
		{
			const std::string label = text.substr(6);
			if (label == "1" || label == "2" || label == "3")
				return qsw::InitialStateSpec::basis(label[0] - '0');
		}
		throw UsageError("--initial must be mixed, worst, or basis:1|2|3");
	}

	int run_scan(const CommonOptions &common, const ScanOptions &opt, const CLI::App &cmd)
	{
		if (opt.steps < 2)
			throw UsageError("--steps must be at least 2");
		auto pick = [&](const char *flag, double value) { return cmd.count(flag) ? common.angle(value) : value; };
		qsw::ScanGrid grid;
		grid.theta_values = qsw::linspace(pick("--theta-min", opt.theta_min), pick("--theta-max", opt.theta_max), opt.steps);
		grid.phi_values = qsw::linspace(pick("--phi-min", opt.phi_min), pick("--phi-max", opt.phi_max), opt.steps);
		grid.word = opt.word;
		grid.initial = parse_initial(opt.initial);

		const auto overlaps = qsw::scan_overlap(grid, qsw::PureState::basis(2));
		std::ostringstream csv;
		qsw::write_scan_csv(csv, grid, overlaps);
		emit(common, csv.str());
		return 0;
	}

	// dfa / cerny --------------------------------------------------------------

	struct DfaOptions
	{
		std::string file;
		std::string check;
		bool shortest = false;
		bool greedy = false;
		int cerny = 0;
	};

	nlohmann::ordered_json word_json(const std::optional<qsw::ClassicalWord> &word)
	{
		nlohmann::ordered_json doc;
		if (!word)
		{
			doc["word"] = nullptr;
			return doc;
		}
		doc["word"] = *word;
		doc["word_length"] = word->size();
		return doc;
	}

	nlohmann::ordered_json cerny_json(int n)
	{
		const qsw::Dfa d = qsw::make_cerny_automaton(n);
		auto word = n <= qsw::kMaxExhaustiveStates ? qsw::shortest_sync_word(d) : qsw::greedy_sync_word(d);
		nlohmann::ordered_json doc;
		doc["n"] = n;
		doc["exact"] = n <= qsw::kMaxExhaustiveStates;
		doc["word"] = word ? nlohmann::ordered_json(*word) : nlohmann::ordered_json(nullptr);
		doc["word_length"] = word ? nlohmann::ordered_json(word->size()) : nlohmann::ordered_json(nullptr);
		return doc;
	}

	int run_dfa(const CommonOptions &common, const DfaOptions &opt, const CLI::App &cmd)
	{
		const int modes = static_cast<int>(cmd.count("--check")) + (opt.shortest ? 1 : 0) + (opt.greedy ? 1 : 0)
						  + static_cast<int>(cmd.count("--cerny"));
		if (modes != 1)
			throw UsageError("choose exactly one of --check WORD, --shortest, --greedy, --cerny N");

		if (cmd.count("--cerny"))
		{
			if (opt.cerny < 2)
				throw UsageError("--cerny needs n >= 2");
			emit(common, cerny_json(opt.cerny).dump() + "\n");
			return 0;
		}
		if (opt.file.empty())
			throw UsageError("--file is required for --check, --shortest and --greedy");
		const qsw::Dfa d = qsw::load_dfa_file(opt.file);

		nlohmann::ordered_json doc;
		if (cmd.count("--check"))
		{
			const auto result = qsw::is_synchronizing(d, opt.check);
			doc["synchronizing"] = result.synchronizing;
			doc["state"] = result.state ? nlohmann::ordered_json(*result.state) : nlohmann::ordered_json(nullptr);
		}
		else if (opt.shortest)
			doc = word_json(qsw::shortest_sync_word(d));
		else
			doc = word_json(qsw::greedy_sync_word(d));
		emit(common, doc.dump() + "\n");
		return 0;
	}

	// states -------------------------------------------------------------------

	struct FamilyOptions
	{
		double theta = 9.0 / 101.0;
		double phi = 4.0 / 101.0 * std::numbers::pi;
		int n = 101;
		std::optional<double> alpha, beta;
		std::size_t cap = qsw::kDefaultFamilyCap;
	};

	qsw::PrepFamily family_from(const CommonOptions &common, const FamilyOptions &opt, const CLI::App &cmd)
	{
		if (opt.n < 1)
			throw UsageError("--n must be at least 1");
		qsw::PrepFamily family;
		family.theta = cmd.count("--theta") ? common.angle(opt.theta) : opt.theta;
		family.phi = cmd.count("--phi") ? common.angle(opt.phi) : opt.phi;
		require_finite(family.theta, "--theta");
		require_finite(family.phi, "--phi");
		family.phase = phase_from(common.angle(opt.alpha), common.angle(opt.beta));
		family.n = opt.n;
		return family;
	}

	int run_states(const CommonOptions &common, const FamilyOptions &opt, const CLI::App &cmd)
	{
		const auto family = family_from(common, opt, cmd);
		const auto members = qsw::generate_family(family, opt.cap);
		std::ostringstream csv;
		qsw::write_point_cloud_csv(csv, family, members);
		emit(common, csv.str());
		return 0;
	}

	// prepare ------------------------------------------------------------------

	int run_prepare(const CommonOptions &common, const FamilyOptions &opt, const std::string &target_text,
					const CLI::App &cmd)
	{
		const auto family = family_from(common, opt, cmd);
		const qsw::ComplexVec raw = qsw::parse_amplitudes(target_text);
		const double norm = raw.norm();
		if (!(std::abs(norm - 1) < 1e-3))
			throw UsageError("--target has norm " + qsw::format_real(norm) + "; it must be normalized");
		if (std::abs(norm - 1) > 1e-12)
			std::cerr << "warning: --target norm " << qsw::format_real(norm) << " differs from 1; normalizing\n";
		const auto target = qsw::PureState::normalized(raw);

		const auto result = qsw::compile_target(family, target, opt.cap);
		emit(common, qsw::compile_result_json(result).dump() + "\n");
		return 0;
	}
} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"Quantum synchronizing words for a qutrit: reset, scan, prepare; classical DFA synchronization"};
	app.require_subcommand(1);
	app.fallthrough();

	CommonOptions common;
	app.add_option("--out", common.out, "Output path (default: stdout)");
	app.add_option("--seed", common.seed, "Seed for deterministic sampling")->capture_default_str();
	app.add_flag("--pi-units", common.pi_units, "Multiply every angle given on the command line by pi");

	SyncCheckOptions sync_opt;
	auto *sync_cmd = app.add_subcommand("sync-check", "Worst-case and maximally-mixed fidelity of a word with |2>");
	sync_cmd->add_option("--theta", sync_opt.theta, "Rotation angle of A in the (2,3)-plane [rad]");
	sync_cmd->add_option("--phi", sync_opt.phi, "Rotation angle of B in the (1,2)-plane [rad]");
	sync_cmd->add_option("--alpha", sync_opt.alpha, "Phase of C on |2> [rad]");
	sync_cmd->add_option("--beta", sync_opt.beta, "Phase of C on |3> [rad]");
	sync_cmd->add_option("--word", sync_opt.word, "Word over {A,B,C}, applied left to right")->capture_default_str();
	sync_cmd->add_option("--alphabet", sync_opt.alphabet_file, "Alphabet JSON file (overrides the angle flags)");

	ScanOptions scan_opt;
	auto *scan_cmd = app.add_subcommand("scan", "Overlap with |2> over a (theta, phi) grid, as CSV");
	scan_cmd->add_option("--theta-min", scan_opt.theta_min, "Default 0.4 pi");
	scan_cmd->add_option("--theta-max", scan_opt.theta_max, "Default 0.6 pi");
	scan_cmd->add_option("--phi-min", scan_opt.phi_min, "Default 0.4 pi");
	scan_cmd->add_option("--phi-max", scan_opt.phi_max, "Default 0.6 pi");
	scan_cmd->add_option("--steps", scan_opt.steps, "Grid points per axis")->capture_default_str();
	scan_cmd->add_option("--word", scan_opt.word, "Word over {A,B}")->capture_default_str();
	scan_cmd->add_option("--initial", scan_opt.initial, "mixed | worst | basis:1|2|3")->capture_default_str();

	DfaOptions dfa_opt;
	auto *dfa_cmd = app.add_subcommand("dfa", "Classical synchronizing words");
	dfa_cmd->add_option("--file", dfa_opt.file, "DFA JSON file");
	dfa_cmd->add_option("--check", dfa_opt.check, "Test whether WORD synchronizes");
	dfa_cmd->add_flag("--shortest", dfa_opt.shortest, "Shortest synchronizing word (subset BFS, N <= 24)");
	dfa_cmd->add_flag("--greedy", dfa_opt.greedy, "Pair-merging synchronizing word");
	dfa_cmd->add_option("--cerny", dfa_opt.cerny, "Build and solve the Cerny automaton C_n");

	int cerny_n = 0;
	auto *cerny_cmd = app.add_subcommand("cerny", "Shortest synchronizing word of the Cerny automaton C_n");
	cerny_cmd->add_option("--n,n", cerny_n, "Number of states")->required();

	FamilyOptions states_opt;
	auto *states_cmd = app.add_subcommand("states", "Point cloud of the family C^l B^k A2^j |2>, as CSV");
	FamilyOptions prepare_opt;
	std::string target_text;
	auto *prepare_cmd = app.add_subcommand("prepare", "Compile a target state into a reset-and-prepare word");
	for (auto [cmd, opt] : {std::pair{states_cmd, &states_opt}, std::pair{prepare_cmd, &prepare_opt}})
	{
		cmd->add_option("--theta", opt->theta, "Default 9/101");
		cmd->add_option("--phi", opt->phi, "Default 4 pi / 101");
		cmd->add_option("--n", opt->n, "Index range 0..n-1")->capture_default_str();
		cmd->add_option("--alpha", opt->alpha, "Phase of C on |2> [rad]; enables the complex family");
		cmd->add_option("--beta", opt->beta, "Phase of C on |3> [rad]");
		cmd->add_option("--cap", opt->cap, "Maximum number of family states")->capture_default_str();
	}
	prepare_cmd->add_option("--target", target_text, "Three amplitudes, e.g. 0,0.707i,0.707 or 0.6,0.8-0i,0")
		->required();

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::CallForHelp &e)
	{
		return app.exit(e);
	}
	catch (const CLI::CallForAllHelp &e)
	{
		return app.exit(e);
	}
	catch (const CLI::ParseError &e)
	{
		app.exit(e);
		return kExitUsage;
	}

	try
	{
		if (*sync_cmd)
			return run_sync_check(common, sync_opt, sync_cmd->count("--theta") > 0, sync_cmd->count("--phi") > 0);
		if (*scan_cmd)
			return run_scan(common, scan_opt, *scan_cmd);
		if (*dfa_cmd)
			return run_dfa(common, dfa_opt, *dfa_cmd);
		if (*cerny_cmd)
		{
			if (cerny_n < 2)
				throw UsageError("n must be at least 2");
			emit(common, cerny_json(cerny_n).dump() + "\n");
			return 0;
		}
		if (*states_cmd)
			return run_states(common, states_opt, *states_cmd);
		if (*prepare_cmd)
			return run_prepare(common, prepare_opt, target_text, *prepare_cmd);
	}
	catch (const qsw::IoError &e)
	{
		std::cerr << "error: " << e.what() << '\n';
		return kExitIo;
	}
	catch (const UsageError &e)
	{
		std::cerr << "usage error: " << e.what() << '\n';
		return kExitUsage;
	}
	catch (const qsw::ValidationError &e)
	{
		std::cerr << "error: " << e.what() << '\n';
		return kExitUsage;
	}
	catch (const qsw::LimitError &e)
	{
		std::cerr << "error: " << e.what() << '\n';
		return kExitUsage;
	}
	return kExitUsage;
}
