unsigned long long mix64(unsigned long long x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

unsigned long long hash_ints(const int *a, int n) {
  unsigned long long h = 0x9e3779b97f4a7c15ULL;
  for (int i = 0; i < n; i++) {
    h = mix64(h ^ (unsigned long long)(unsigned)a[i]);
  }
  return h;
}

int hash_bucket(const int *a, int n, int buckets) {
  if (buckets <= 0) return 0;
  return (int)(hash_ints(a, n) % (unsigned long long)buckets);
}
