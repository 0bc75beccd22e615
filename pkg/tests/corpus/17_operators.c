unsigned rotate_left(unsigned value, unsigned count) {
    count &= 31u;
    if (count == 0u) {
        return value;
    }
    return (value << count) | (value >> (32u - count));
}
