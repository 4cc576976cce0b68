#pragma once

#include <cmath>

namespace stratdisc::detail
{
//! Neumaier's variant of Kahan summation.
class CompensatedSum
{
  public:
    void add(double v)
    {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }

    CompensatedSum& operator+=(double v)
    {
        add(v);
        return *this;
    }

    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0;
    double comp_ = 0;
};
}  // namespace stratdisc::detail
