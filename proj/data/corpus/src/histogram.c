#define BUCKETS 16

void histogram(const unsigned char *data, int len, int out[BUCKETS]) {
  for (int i = 0; i < BUCKETS; i++) out[i] = 0;
  for (int i = 0; i < len; i++) {
    out[data[i] % BUCKETS]++;
  }
}

int argmax(const int *a, int n) {
  int best = 0;
  for (int i = 1; i < n; i++) {
    if (a[i] > a[best]) best = i;
  }
  return best;
}

int mode_bucket(const unsigned char *data, int len) {
  int counts[BUCKETS];
  histogram(data, len, counts);
  return argmax(counts, BUCKETS);
}
