#ifndef RELAYIA_EFFECTIVE_CHANNEL_HPP
#define RELAYIA_EFFECTIVE_CHANNEL_HPP

#include <vector>

#include "numeric_core.hpp"

namespace relayia {

// Identifies the data stream behind an effective-channel column.
//
// X channel: stream d_{gamma,m} is the message sent by transmitter m in listen
// slot gamma, intended for receiver gamma. Interference channel: stream k is
// pair k's message, labeled (k, k). "Desired at receiver n" therefore always
// means intended_rx == n.
struct StreamLabel {
  int intended_rx = 0;
  int transmitter = 0;
};

struct ReceiverChannel {
  // total_slots x stream_count; column order matches EffectiveChannel::streams.
  ComplexMatrix gains;
  // total_slots x total_slots, Hermitian positive definite. Identity from the
  // receiver's own noise plus whatever relay noise was forwarded into the
  // relay-slot rows.
  ComplexMatrix noise_covariance;
};

// The stacked slots x streams system each receiver sees after precoding; the
// object whose column ranks certify alignment.
struct EffectiveChannel {
  std::vector<StreamLabel> streams;
  std::vector<ReceiverChannel> receivers;
  int listen_slots = 0;
  int relay_slots = 0;

  int total_slots() const { return listen_slots + relay_slots; }
  int stream_count() const { return static_cast<int>(streams.size()); }

  std::vector<int> desired_columns(int rx) const {
    std::vector<int> cols;
    for (int c = 0; c < stream_count(); ++c)
      if (streams[c].intended_rx == rx) cols.push_back(c);
    return cols;
  }
  std::vector<int> interference_columns(int rx) const {
    std::vector<int> cols;
    for (int c = 0; c < stream_count(); ++c)
      if (streams[c].intended_rx != rx) cols.push_back(c);
    return cols;
  }
};

inline ComplexMatrix select_columns(const ComplexMatrix& matrix, const std::vector<int>& cols) {
  ComplexMatrix out(matrix.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = matrix.col(cols[i]);
  return out;
}

}  // namespace relayia

#endif
