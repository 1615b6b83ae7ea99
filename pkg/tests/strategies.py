from hypothesis import strategies as st


def rgs_st(max_len=9):
    @st.composite
    def build(draw):
        n = draw(st.integers(0, max_len))
        w, top = [], 0
        for _ in range(n):
            x = draw(st.integers(1, top + 1))
            w.append(x)
            top = max(top, x)
        return tuple(w)

    return build()
