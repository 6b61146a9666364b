/* Table-free CRC-32 over a byte buffer. */
unsigned crc32_update(unsigned crc, const unsigned char *data, int len) {
  crc = ~crc;
  for (int i = 0; i < len; i++) {
    crc ^= data[i];
    for (int bit = 0; bit < 8; bit++) {
      if (crc & 1u)
        crc = (crc >> 1) ^ 0xEDB88320u;
      else
        crc >>= 1;
    }
  }
  return ~crc;
}

unsigned crc32_of_counter(int n) {
  unsigned char buf[64];
  for (int i = 0; i < 64; i++) buf[i] = (unsigned char)(i * 7 + n);
  return crc32_update(0u, buf, 64);
}
