#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qsw
{
	/// Calls fn(i) for i in [0, count) on contiguous chunks across hardware
	/// threads. Callers write into slot i, so results never depend on scheduling.
	/// The first exception thrown by any worker is rethrown.
	template <typename Fn>
	void parallel_for(std::size_t count, Fn &&fn)
	{
		const std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), count);
		if (workers <= 1)
		{
			for (std::size_t i = 0; i < count; ++i)
				fn(i);
			return;
		}

		std::exception_ptr error;
		std::mutex error_mutex;
		std::vector<std::thread> pool;
		pool.reserve(workers);
		const std::size_t chunk = (count + workers - 1) / workers;
		for (std::size_t w = 0; w < workers; ++w)
		{
			const std::size_t begin = w * chunk;
			const std::size_t end = std::min(count, begin + chunk);
			pool.emplace_back([&, begin, end] {
				try
				{
					for (std::size_t i = begin; i < end; ++i)
						fn(i);
				}
				catch (...)
				{
					std::lock_guard<std::mutex> lock(error_mutex);
					if (!error)
						error = std::current_exception();
				}
			});
		}
		for (auto &t : pool)
			t.join();
		if (error)
			std::rethrow_exception(error);
	}
} // namespace qsw
