#ifndef TIPS_RING_BUFFER_H_
#define TIPS_RING_BUFFER_H_

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tips {

// Fixed-capacity FIFO: once full, each Push evicts the oldest element.
// Index 0 is always the oldest retained element.
template <typename T>
class RingBuffer {
 public:
  explicit RingBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw std::invalid_argument("capacity must be > 0");
  }

  void Push(T value) {
    if (items_.size() < capacity_) {
      items_.push_back(std::move(value));
    } else {
      items_[head_] = std::move(value);
      head_ = (head_ + 1) % capacity_;
    }
  }

  const T& operator[](std::size_t i) const {
    return items_[(head_ + i) % items_.size()];
  }
  const T& at(std::size_t i) const {
    if (i >= items_.size()) throw std::out_of_range("ring buffer index");
    return (*this)[i];
  }

  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return items_.empty(); }

  void Clear() {
    items_.clear();
    head_ = 0;
  }

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;
  std::vector<T> items_;
};

}  // namespace tips

#endif  // TIPS_RING_BUFFER_H_
