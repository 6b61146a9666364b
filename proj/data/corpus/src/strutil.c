int str_length(const char *s) {
  int n = 0;
  while (s[n] != '\0') n++;
  return n;
}

void str_reverse(char *s) {
  int i = 0;
  int j = str_length(s) - 1;
  while (i < j) {
    char tmp = s[i];
    s[i] = s[j];
    s[j] = tmp;
    i++;
    j--;
  }
}

int count_vowels(const char *s) {
  int count = 0;
  for (int i = 0; s[i] != '\0'; i++) {
    char c = s[i];
    if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') count++;
  }
  return count;
}
