package com.shop.payment;

import com.shop.model.Money;

public interface PaymentGateway {
    void charge(Money amount);
}
