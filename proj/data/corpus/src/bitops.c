int popcount32(unsigned x) {
  int count = 0;
  while (x != 0) {
    count += (int)(x & 1u);
    x >>= 1;
  }
  return count;
}

unsigned reverse_bits(unsigned x) {
  unsigned out = 0;
  for (int i = 0; i < 32; i++) {
    out = (out << 1) | (x & 1u);
    x >>= 1;
  }
  return out;
}

int parity(unsigned x) { return popcount32(x) & 1; }

unsigned rotl(unsigned x, int k) {
  k &= 31;
  return (x << k) | (x >> ((32 - k) & 31));
}
