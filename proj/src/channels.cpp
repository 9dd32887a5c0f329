#include "qsw/channels.hpp"

#include <cmath>
#include <utility>

namespace qsw
{
	namespace
	{
		constexpr double kCompleteness = 1e-12;

		ComplexMat kraus_sum(const std::vector<ComplexMat> &ops, const ComplexMat &m)
		{
			ComplexMat out = ComplexMat::Zero();
			for (const auto &k : ops)
				out.noalias() += k * m * k.adjoint();
			return out;
		}

		ComplexMat dual_kraus_sum(const std::vector<ComplexMat> &ops, const ComplexMat &m)
		{
			ComplexMat out = ComplexMat::Zero();
			for (const auto &k : ops)
				out.noalias() += k.adjoint() * m * k;
			return out;
		}
	} // namespace

	KrausChannel::KrausChannel(std::string name, std::vector<ComplexMat> kraus_ops)
		: name_(std::move(name)), kraus_ops_(std::move(kraus_ops))
	{
		if (kraus_ops_.empty())
			throw ValidationError("KrausChannel '" + name_ + "': no Kraus operators");
		ComplexMat sum = ComplexMat::Zero();
		for (const auto &k : kraus_ops_)
		{
			if (!k.allFinite())
				throw ValidationError("KrausChannel '" + name_ + "': non-finite Kraus entry");
			sum.noalias() += k.adjoint() * k;
		}
		if ((sum - ComplexMat::Identity()).cwiseAbs().maxCoeff() > kCompleteness)
			throw ValidationError("KrausChannel '" + name_ + "': Kraus operators are not complete");
	}

	bool KrausChannel::is_unitary(double tolerance) const
	{
		if (kraus_ops_.size() != 1)
			return false;
		const ComplexMat &k = kraus_ops_.front();
		return (k.adjoint() * k - ComplexMat::Identity()).cwiseAbs().maxCoeff() <= tolerance
			   && (k * k.adjoint() - ComplexMat::Identity()).cwiseAbs().maxCoeff() <= tolerance;
	}

	KrausChannel make_channel_A(double theta)
	{
		if (!std::isfinite(theta))
			throw ValidationError("make_channel_A: theta must be finite");
		const double c = std::cos(theta), s = std::sin(theta);
		ComplexMat a1 = ComplexMat::Zero();
		a1(1, 0) = 1;
		ComplexMat a2 = ComplexMat::Zero();
		a2(1, 1) = c;
		a2(1, 2) = -s;
		a2(2, 1) = s;
		a2(2, 2) = c;
		return KrausChannel("A", {a1, a2});
	}

	KrausChannel make_channel_B(double phi)
	{
		if (!std::isfinite(phi))
			throw ValidationError("make_channel_B: phi must be finite");
		const double c = std::cos(phi), s = std::sin(phi);
		ComplexMat b = ComplexMat::Identity();
		b(0, 0) = c;
		b(0, 1) = -s;
		b(1, 0) = s;
		b(1, 1) = c;
		return KrausChannel("B", {b});
	}

	KrausChannel make_channel_C(double alpha, double beta)
	{
		if (!std::isfinite(alpha) || !std::isfinite(beta))
			throw ValidationError("make_channel_C: alpha and beta must be finite");
		ComplexMat c = ComplexMat::Identity();
		c(1, 1) = std::polar(1.0, alpha);
		c(2, 2) = std::polar(1.0, beta);
		return KrausChannel("C", {c});
	}

	KrausChannel make_identity_channel(std::string name)
	{
		return KrausChannel(std::move(name), {ComplexMat::Identity()});
	}

	void QuantumAlphabet::add(char letter, KrausChannel channel)
	{
		if (!letters_.emplace(letter, std::move(channel)).second)
			throw ValidationError(std::string("QuantumAlphabet: duplicate letter '") + letter + "'");
	}

	const KrausChannel &QuantumAlphabet::at(char letter) const
	{
		auto it = letters_.find(letter);
		if (it == letters_.end())
			throw ValidationError(std::string("QuantumAlphabet: unknown letter '") + letter + "'");
		return it->second;
	}

	std::string QuantumAlphabet::letter_names() const
	{
		std::string names;
		for (const auto &[letter, ch] : letters_)
			names.push_back(letter);
		return names;
	}

	QuantumAlphabet make_standard_alphabet(double theta, double phi, std::optional<PhaseAngles> phase)
	{
		QuantumAlphabet alphabet;
		alphabet.add('A', make_channel_A(theta));
		alphabet.add('B', make_channel_B(phi));
		if (phase)
			alphabet.add('C', make_channel_C(phase->alpha, phase->beta));
		return alphabet;
	}

	QuantumWord::QuantumWord(std::string letters, std::shared_ptr<const QuantumAlphabet> alphabet)
		: letters_(std::move(letters)), alphabet_(std::move(alphabet))
	{
		if (!alphabet_)
			throw ValidationError("QuantumWord: missing alphabet");
		for (char c : letters_)
			if (!alphabet_->contains(c))
				throw ValidationError(std::string("QuantumWord: letter '") + c + "' is not in the alphabet");
	}

	QuantumWord QuantumWord::operator+(const QuantumWord &other) const
	{
		if (alphabet_ != other.alphabet_)
			throw ValidationError("QuantumWord: cannot concatenate words over different alphabets");
		return QuantumWord(letters_ + other.letters_, alphabet_);
	}

	DensityMatrix apply_channel(const KrausChannel &ch, const DensityMatrix &rho)
	{
		return DensityMatrix(hermitian_part(kraus_sum(ch.kraus_ops(), rho.matrix())));
	}

	DensityMatrix apply_word(const QuantumWord &w, const DensityMatrix &rho)
	{
		ComplexMat m = rho.matrix();
		for (char c : w.letters())
			m = hermitian_part(kraus_sum(w.alphabet().at(c).kraus_ops(), m));
		return DensityMatrix(m);
	}

	ComplexMat adjoint_apply_channel(const KrausChannel &ch, const ComplexMat &obs)
	{
		return hermitian_part(dual_kraus_sum(ch.kraus_ops(), obs));
	}

	ComplexMat adjoint_apply_word(const QuantumWord &w, const ComplexMat &obs)
	{
		if (!is_hermitian(obs))
			throw ValidationError("adjoint_apply_word: observable is not Hermitian");
		ComplexMat x = hermitian_part(obs);
		for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
			x = adjoint_apply_channel(w.alphabet().at(*it), x);
		return x;
	}
} // namespace qsw
