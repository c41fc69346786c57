package com.shop.model;

import java.math.BigDecimal;

public final class Money {
    public static final Money ZERO = new Money(BigDecimal.ZERO);
    private final BigDecimal amount;

    private Money(BigDecimal amount) {
        this.amount = amount;
    }

    public Money plus(Money other) {
        return new Money(amount.add(other.amount));
    }

    public boolean isNegative() {
        return amount.signum() < 0;
    }
}
