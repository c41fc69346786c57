package com.shop.ui;

import com.shop.service.CartService;
import com.shop.model.Money;

public class CartView {
    public String render(CartService cart) {
        Money total = cart.total();
        return "Total: " + total;
    }
}
