#include "qsw/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace qsw
{
	namespace
	{
		std::string_view trim(std::string_view s)
		{
			while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
				s.remove_prefix(1);
			while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
				s.remove_suffix(1);
			return s;
		}

		double angle_field(const nlohmann::json &letter, const char *key)
		{
			if (!letter.contains(key) || !letter.at(key).is_number())
				throw ValidationError(std::string("alphabet: missing numeric field '") + key + "'");
			return letter.at(key).get<double>();
		}

		nlohmann::json read_json_file(const std::filesystem::path &path)
		{
			std::ifstream in(path);
			if (!in)
				throw IoError("cannot open " + path.string());
			try
			{
				return nlohmann::json::parse(in);
			}
			catch (const nlohmann::json::parse_error &e)
			{
				throw ValidationError(path.string() + ": " + e.what());
			}
		}
	} // namespace

	std::string format_real(double value)
	{
		char buf[64];
		auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
		if (ec != std::errc())
			throw ValidationError("format_real: value cannot be formatted");
		return std::string(buf, ptr);
	}

	double round_to_printed(double value) { return parse_real(format_real(value)); }

	double parse_real(std::string_view text)
	{
		text = trim(text);
		if (!text.empty() && text.front() == '+')
			text.remove_prefix(1);
		double value = 0;
		auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
		if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
			throw ValidationError("cannot parse '" + std::string(text) + "' as a number");
		return value;
	}

	std::complex<double> parse_complex(std::string_view text)
	{
		text = trim(text);
		if (text.empty())
			throw ValidationError("empty amplitude");
		if (text.back() != 'i')
			return {parse_real(text), 0.0};

		text.remove_suffix(1);
		// Split at the last sign that is not a leading sign or an exponent sign.
		std::size_t split = std::string_view::npos;
		for (std::size_t p = text.size(); p-- > 1;)
			if ((text[p] == '+' || text[p] == '-') && text[p - 1] != 'e' && text[p - 1] != 'E')
			{
				split = p;
				break;
			}
		const std::string_view re = split == std::string_view::npos ? std::string_view{} : text.substr(0, split);
		std::string_view im = split == std::string_view::npos ? text : text.substr(split);
		double im_value;
		if (im.empty() || im == "+")
			im_value = 1;
		else if (im == "-")
			im_value = -1;
		else
			im_value = parse_real(im);
		return {re.empty() ? 0.0 : parse_real(re), im_value};
	}

	ComplexVec parse_amplitudes(std::string_view text)
	{
		ComplexVec v;
		int count = 0;
		while (true)
		{
			const std::size_t comma = text.find(',');
			if (count >= kDim)
				throw ValidationError("target must have exactly 3 comma-separated amplitudes");
			v(count++) = parse_complex(text.substr(0, comma));
			if (comma == std::string_view::npos)
				break;
			text.remove_prefix(comma + 1);
		}
		if (count != kDim)
			throw ValidationError("target must have exactly 3 comma-separated amplitudes");
		return v;
	}

	QuantumAlphabet parse_alphabet_json(const nlohmann::json &doc)
	{
		if (!doc.is_object() || !doc.contains("letters") || !doc.at("letters").is_object())
			throw ValidationError("alphabet: expected an object with a 'letters' object");
		QuantumAlphabet alphabet;
		for (const auto &[name, spec] : doc.at("letters").items())
		{
			if (name.size() != 1)
				throw ValidationError("alphabet: letter names must be single characters, got '" + name + "'");
			if (!spec.is_object() || !spec.contains("type") || !spec.at("type").is_string())
				throw ValidationError("alphabet: letter '" + name + "' needs a string 'type'");
			const std::string type = spec.at("type").get<std::string>();
			KrausChannel ch = [&] {
				if (type == "rot23_with_reset")
					return make_channel_A(angle_field(spec, "theta"));
				if (type == "rot12")
					return make_channel_B(angle_field(spec, "phi"));
				if (type == "phase")
					return make_channel_C(angle_field(spec, "alpha"), angle_field(spec, "beta"));
				if (type == "identity")
					return make_identity_channel(name);
				throw ValidationError("alphabet: unknown channel type '" + type + "'");
			}();
			alphabet.add(name[0], KrausChannel(name, ch.kraus_ops()));
		}
		if (alphabet.size() == 0)
			throw ValidationError("alphabet: no letters");
		return alphabet;
	}

	QuantumAlphabet load_alphabet_file(const std::filesystem::path &path)
	{
		return parse_alphabet_json(read_json_file(path));
	}

	Dfa parse_dfa_json(const nlohmann::json &doc)
	{
		if (!doc.is_object() || !doc.contains("n_states") || !doc.at("n_states").is_number_integer())
			throw ValidationError("dfa: expected an integer 'n_states'");
		if (!doc.contains("letters") || !doc.at("letters").is_object())
			throw ValidationError("dfa: expected a 'letters' object");
		std::map<char, std::vector<int>> letters;
		for (const auto &[name, table] : doc.at("letters").items())
		{
			if (name.size() != 1)
				throw ValidationError("dfa: letter names must be single characters, got '" + name + "'");
			if (!table.is_array())
				throw ValidationError("dfa: letter '" + name + "' needs an array of images");
			std::vector<int> images;
			for (const auto &v : table)
			{
				if (!v.is_number_integer())
					throw ValidationError("dfa: letter '" + name + "' has a non-integer image");
				images.push_back(v.get<int>());
			}
			letters.emplace(name[0], std::move(images));
		}
		return Dfa(doc.at("n_states").get<int>(), letters);
	}

	Dfa load_dfa_file(const std::filesystem::path &path) { return parse_dfa_json(read_json_file(path)); }

	nlohmann::ordered_json dfa_to_json(const Dfa &d)
	{
		nlohmann::ordered_json doc;
		doc["n_states"] = d.n_states();
		doc["letters"] = nlohmann::ordered_json::object();
		for (char c : d.letter_names())
			doc["letters"][std::string(1, c)] = d.image_table(c);
		return doc;
	}

	void write_scan_csv(std::ostream &out, const ScanGrid &grid, const Eigen::MatrixXd &overlaps)
	{
		if (overlaps.rows() != static_cast<Eigen::Index>(grid.theta_values.size())
			|| overlaps.cols() != static_cast<Eigen::Index>(grid.phi_values.size()))
			throw ValidationError("write_scan_csv: overlap matrix does not match the grid");
		out << "theta,phi,overlap\n";
		for (Eigen::Index i = 0; i < overlaps.rows(); ++i)
			for (Eigen::Index j = 0; j < overlaps.cols(); ++j)
				out << format_real(grid.theta_values[i]) << ',' << format_real(grid.phi_values[j]) << ','
					<< format_real(overlaps(i, j)) << '\n';
	}

	void write_point_cloud_csv(std::ostream &out, const PrepFamily &family, const std::vector<FamilyMember> &members)
	{
		if (family.is_complex())
		{
			out << "l,k,j,re1,im1,re2,im2,re3,im3\n";
			for (const auto &m : members)
			{
				out << m.index.l << ',' << m.index.k << ',' << m.index.j;
				for (int c = 0; c < kDim; ++c)
				{
					const auto a = m.state.amplitudes()(c);
					out << ',' << format_real(a.real()) << ',' << format_real(a.imag());
				}
				out << '\n';
			}
			return;
		}
		out << "k,j,x,y,z\n";
		for (const auto &m : members)
		{
			const auto &a = m.state.amplitudes();
			out << m.index.k << ',' << m.index.j << ',' << format_real(a(0).real()) << ',' << format_real(a(1).real())
				<< ',' << format_real(a(2).real()) << '\n';
		}
	}

	CsvTable read_csv(std::istream &in)
	{
		CsvTable table;
		std::string line;
		if (!std::getline(in, line))
			throw ValidationError("read_csv: missing header");
		{
			std::stringstream ss(line);
			std::string cell;
			while (std::getline(ss, cell, ','))
				table.header.push_back(std::string(trim(cell)));
		}
		while (std::getline(in, line))
		{
			if (trim(line).empty())
				continue;
			std::vector<double> row;
			std::stringstream ss(line);
			std::string cell;
			while (std::getline(ss, cell, ','))
				row.push_back(parse_real(cell));
			if (row.size() != table.header.size())
				throw ValidationError("read_csv: row width does not match the header");
			table.rows.push_back(std::move(row));
		}
		return table;
	}

	nlohmann::ordered_json sync_report_json(const SyncReport &report, double theta, double phi)
	{
		nlohmann::ordered_json doc;
		doc["word"] = report.word.letters();
		doc["theta"] = round_to_printed(theta);
		doc["phi"] = round_to_printed(phi);
		doc["worst_case_fidelity"] = round_to_printed(report.worst_case_fidelity);
		doc["mixed_state_fidelity"] = round_to_printed(report.fidelity_from_maximally_mixed);
		return doc;
	}

	nlohmann::ordered_json compile_result_json(const CompileResult &result)
	{
		nlohmann::ordered_json doc;
		doc["word"] = result.full_word.letters();
		doc["l"] = result.index.l;
		doc["k"] = result.index.k;
		doc["j"] = result.index.j;
		doc["predicted_fidelity"] = round_to_printed(result.predicted_fidelity);
		return doc;
	}
} // namespace qsw
