package com.shop.service;

import com.shop.payment.PaymentGateway;
import com.shop.model.Money;
import com.shop.util.Logger;
import com.shop.util.ShopException;

public class PaymentService implements PaymentGateway {
    private final Logger log = new Logger("payments");

    @Override
    public void charge(Money amount) {
        if (amount.isNegative()) {
            throw new ShopException("negative charge");
        }
        log.info("charged " + amount);
    }
}
